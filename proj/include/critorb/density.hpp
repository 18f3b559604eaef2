#pragma once

// Fixed-point proportions of S_D, the 1/D! lower bound, and empirical
// densities of primes p for which G_{d,n} has a root mod p.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "critorb/arith.hpp"

namespace critorb {

using Rational = mpq_class;

/// sum_{i=1..D} (-1)^(i+1) / i!, the proportion of S_D fixing a point.
Rational fpp_symmetric(std::uint64_t D);
/// 1 / D_{d,n}!.
Rational density_lower_bound(unsigned d, std::uint64_t n);

struct LimitErrorBound {
    Rational sharp;   // 1/(D_{2,n}+1)!
    Rational coarse;  // 1/(2^(n-2))!
};
LimitErrorBound limit_error_bound(std::uint64_t n);

struct EmpiricalDensity {
    unsigned d = 2;
    std::uint64_t n = 1;
    std::uint64_t X = 2;
    std::uint64_t primes_scanned = 0;  // excludes the skipped bucket
    std::uint64_t hits = 0;
    std::vector<std::uint64_t> skipped;  // p | d or p | disc(G_{d,n})
    std::vector<std::pair<std::uint64_t, bool>> rows;  // (p, has_root), if requested

    double fraction() const { return primes_scanned ? double(hits) / double(primes_scanned) : 0.0; }
};

struct DensityOptions {
    unsigned threads = 1;
    bool collect_rows = false;
};

EmpiricalDensity empirical_density(unsigned d, std::uint64_t n, std::uint64_t X, const DensityOptions& options = {});

/// Factorials above this are refused by the exact formulas.
inline constexpr std::uint64_t kMaxFactorialArgument = 100'000;

}  // namespace critorb
