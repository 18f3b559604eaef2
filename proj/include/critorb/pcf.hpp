#pragma once

// Census of critical period types of x^d + c over F_p, the simple-root
// conditions (*) and (**), and lifts of F_p periodic parameters to Z/p^N.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "critorb/arith.hpp"
#include "critorb/orbit.hpp"

namespace critorb {

struct PcfCensus {
    unsigned d = 2;
    std::uint64_t p = 2;
    std::vector<PeriodType> entries;                          // indexed by c in [0, p)
    std::map<std::uint64_t, std::uint64_t> periodic_count;    // exact period n -> |A_n|
    std::uint64_t preperiodic_count = 0;

    std::vector<std::uint64_t> periodic_with_period(std::uint64_t n) const;
};

PcfCensus enumerate_pcf(unsigned d, std::uint64_t p, unsigned threads = 1);

struct ConditionStar {
    std::uint64_t n = 1;
    bool holds = true;
    std::vector<std::uint64_t> checked;    // c with 0 of exact period n
    std::vector<std::uint64_t> witnesses;  // failing c: F'(c) = 0 mod p
};

/// Condition (*) at n: every c of exact critical period n is a simple root
/// of f^n_{d,c}(0) mod p.
ConditionStar check_condition_star(unsigned d, std::uint64_t p, std::uint64_t n);
ConditionStar check_condition_star(const PcfCensus& census, std::uint64_t n);

struct ConditionStarStar {
    bool holds = true;
    std::vector<ConditionStar> per_period;  // observed periods only
};

/// Condition (**): (*) for every exact period in the census, optionally
/// restricted to periods <= max_period.
ConditionStarStar check_condition_star_star(unsigned d, std::uint64_t p,
                                            std::optional<std::uint64_t> max_period = std::nullopt);

struct CorrespondenceLift {
    std::uint64_t c = 0;
    std::uint64_t n = 1;
    std::optional<BigInt> lifted;  // mod p^N
    bool periodic_mod_pN = false;
    std::string error;
};

struct CorrespondenceReport {
    unsigned d = 2;
    std::uint64_t p = 2;
    unsigned precision = 1;
    bool guaranteed = false;
    std::string hypothesis;  // which hypothesis held, or why none did
    std::map<std::uint64_t, std::uint64_t> periodic_count;
    std::uint64_t preperiodic_count = 0;
    std::vector<CorrespondenceLift> lifts;
};

CorrespondenceReport correspondence_report(unsigned d, std::uint64_t p, unsigned precision);

}  // namespace critorb
