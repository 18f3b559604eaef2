#pragma once

// Upper bounds on rho_d(n, c), the number of primitive prime divisors of a_n,
// brute-force counts of the same, and per-iterate witnesses for maximal
// iterated Galois layers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "critorb/arith.hpp"
#include "critorb/orbit.hpp"

namespace critorb {

BigInt height(const RationalParam& c);

struct RhoBound {
    double value = 0;    // bound from the applicable case (or the general one)
    double general = 0;  // d^(n-1) (3 + log2 h(c)) + log2 |a_1|
    std::string case_id;
};

/// Throws InvalidInput for PCF integer parameters.
RhoBound rho_upper_bound(unsigned d, std::uint64_t n, const RationalParam& c);

struct RhoCount {
    std::uint64_t rho = 0;
    bool complete = true;  // false: factorization partial, rho is a lower bound
    std::vector<BigInt> primes;
};

RhoCount count_primitive_primes(unsigned d, const RationalParam& c, std::uint64_t n, const FactorBudget& budget = {},
                                double max_bits = kDefaultExactBitsGuard);

struct CertificateEntry {
    std::uint64_t n = 1;
    bool found = false;
    BigInt p;
    std::uint64_t v = 0;
    bool primitive = false;
    bool valuation_coprime = false;  // gcd(v, d) = 1
    bool p_coprime_to_d = false;
    std::string source;  // "factor" or "scan"

    bool valid() const { return found && primitive && valuation_coprime && p_coprime_to_d; }
};

struct ClaimedOrder {
    BigInt phi_d;
    BigInt base;      // d
    BigInt exponent;  // d^m - 1
};

struct MaximalityCertificate {
    unsigned d = 2;
    BigInt c;
    std::uint64_t m = 1;
    std::vector<CertificateEntry> entries;
    std::optional<bool> minus_c_is_square;  // d = 2 only
    std::optional<ClaimedOrder> claimed_order;

    bool complete() const;
};

struct CertificateOptions {
    std::uint64_t scan_primes = 100'000;
    double factor_bits = 256;  // a_n factored only below this size
    FactorBudget budget{1'000'000, 200'000, kDefaultSeed};
};

MaximalityCertificate maximality_certificate(unsigned d, const BigInt& c, std::uint64_t m,
                                             const CertificateOptions& options = {});

/// Re-derives each entry's checks from (d, c, n, p); true where they agree
/// with the recorded ones.
std::vector<bool> recheck_certificate(const MaximalityCertificate& cert);

}  // namespace critorb
