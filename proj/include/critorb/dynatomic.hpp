#pragma once

// Polynomials in the parameter c: iterates f^n_{d,c}(0), Gleason polynomials
// G_{d,n}(c) = prod_{t|n} (f^t_{d,c}(0))^mu(n/t), their discriminants, and
// root operations modulo p.

#include <cstdint>
#include <vector>

#include "critorb/arith.hpp"
#include "critorb/poly.hpp"

namespace critorb {

/// Largest degree iterate_poly / gleason_poly will build.
inline constexpr std::uint64_t kDefaultPolyDegreeGuard = 1u << 14;

/// f^n_{d,c}(0) in Z[c]. Memoized per (d, n).
IntPoly iterate_poly(unsigned d, std::uint64_t n, std::uint64_t max_degree = kDefaultPolyDegreeGuard);
/// G_{d,n}(c), by exact division of the Moebius product. Memoized per (d, n).
IntPoly gleason_poly(unsigned d, std::uint64_t n, std::uint64_t max_degree = kDefaultPolyDegreeGuard);
/// D_{d,n} = sum_{m|n} mu(n/m) d^(m-1).
BigInt gleason_degree(unsigned d, std::uint64_t n);

/// Res(f, g) by CRT over 62-bit primes, stopping past the Hadamard bound.
BigInt resultant(const IntPoly& f, const IntPoly& g);
/// (-1)^(D(D-1)/2) Res(f, f') / lc(f). Throws InvalidInput for constants.
BigInt discriminant(const IntPoly& f);
/// disc(G_{d,n}), memoized.
BigInt gleason_discriminant(unsigned d, std::uint64_t n);

/// p | disc(f), decided mod p: f mod p has a repeated factor. Requires
/// lc(f) to be a unit mod p, otherwise falls back to the exact discriminant.
bool p_divides_discriminant(const IntPoly& f, std::uint64_t p);

struct RootOptions {
    /// Below this p every residue is evaluated; above, roots are split out of
    /// gcd(x^p - x, f) by Cantor-Zassenhaus.
    std::uint64_t brute_force_limit = 1'000'000;
    std::uint64_t seed = kDefaultSeed;
};

struct RootMultiplicity {
    std::uint64_t root = 0;
    unsigned multiplicity = 0;

    friend bool operator==(const RootMultiplicity&, const RootMultiplicity&) = default;
};

/// Whether f has a root in F_p; via gcd(x^p - x, f mod p).
bool has_root_mod_p(const IntPoly& f, std::uint64_t p);
/// All F_p roots with multiplicity, sorted by root.
std::vector<RootMultiplicity> roots_mod_p(const IntPoly& f, std::uint64_t p, const RootOptions& options = {});
/// f'(c0) != 0 mod p, for a root c0 of f mod p.
bool is_simple_root(const IntPoly& f, std::uint64_t p, const BigInt& c0);

/// Validates d >= 2 and p prime below 2^63.
void require_word_prime(std::uint64_t p);

}  // namespace critorb
