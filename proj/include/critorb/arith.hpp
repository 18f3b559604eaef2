#pragma once

// Integer utilities: residue rings Z/p^t, p-adic valuation, CRT, the Moebius
// function, primality and budgeted factorization. Arbitrary precision is GMP
// (mpz_class) throughout.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace critorb {

using BigInt = mpz_class;

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'c0de'2024'0001ULL;

/// Parses a decimal integer (optional leading '-'); throws InvalidInput.
BigInt parse_bigint(const std::string& text);
std::string to_string(const BigInt& x);

/// Least nonnegative residue of x mod m (m > 0).
BigInt mod_floor(const BigInt& x, const BigInt& m);

BigInt pow(const BigInt& base, unsigned long exp);

/// An element of Z/p^t, always stored fully reduced.
class Residue {
public:
    /// Validates that p is prime and t >= 1; reduces value.
    Residue(BigInt p, unsigned t, const BigInt& value);

    const BigInt& prime() const noexcept { return p_; }
    unsigned exponent() const noexcept { return t_; }
    const BigInt& modulus() const noexcept { return modulus_; }
    const BigInt& value() const noexcept { return value_; }

    Residue with_value(const BigInt& v) const;
    /// Image under the projection Z/p^t -> Z/p^s, s <= t.
    Residue reduce_to(unsigned s) const;

    /// p-adic valuation of the stored value, capped at t (value 0 gives t).
    unsigned valuation() const;
    bool is_zero() const { return value_ == 0; }

    friend Residue operator+(const Residue& a, const Residue& b);
    friend Residue operator-(const Residue& a, const Residue& b);
    friend Residue operator*(const Residue& a, const Residue& b);
    friend bool operator==(const Residue& a, const Residue& b);
    Residue pow(const BigInt& e) const;

private:
    struct Unchecked {};
    Residue(Unchecked, BigInt p, unsigned t, BigInt modulus, BigInt value);
    void require_same_ring(const Residue& other) const;

    BigInt p_;
    unsigned t_;
    BigInt modulus_;
    BigInt value_;
};

struct Factorization {
    std::vector<std::pair<BigInt, unsigned>> factors;  // primes strictly increasing
    BigInt cofactor = 1;                               // 1 iff complete
    bool complete = true;

    BigInt product() const;
};

struct FactorBudget {
    std::uint64_t trial_limit = 1'000'000;
    std::uint64_t rho_iterations = 2'000'000;  // per composite, summed over restarts
    std::uint64_t seed = kDefaultSeed;
};

/// Largest e with p^e | x. Throws InfiniteValuation for x = 0 and
/// InvalidInput if p is not prime.
unsigned val_p(const BigInt& x, const BigInt& p);

/// Solution in [0, prod moduli) of x = value_i mod modulus_i.
BigInt crt(std::span<const std::pair<BigInt, BigInt>> pairs);

int moebius(std::uint64_t n);

/// Deterministic below 2^64 (fixed witness set), Miller-Rabin with 64 seeded
/// random witnesses above (error < 2^-128).
bool is_prime(const BigInt& x, std::uint64_t seed = kDefaultSeed);
bool is_prime_u64(std::uint64_t x);
/// Smallest prime strictly greater than x.
BigInt next_prime(const BigInt& x);
/// Sieve of Eratosthenes; X is capped at 10^9.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);
/// The first `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

Factorization factorize(const BigInt& x, const FactorBudget& budget = {});

/// Multiplicative order of a modulo prime p (a a unit); 0 if a = 0 mod p.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

/// Throws InvalidInput unless x fits in an unsigned 64-bit word.
std::uint64_t to_u64(const BigInt& x, const char* what);

}  // namespace critorb
