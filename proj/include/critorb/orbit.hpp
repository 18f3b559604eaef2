#pragma once

// Critical orbit of f_{d,c}(x) = x^d + c: period types over Z/p^t, p-adic
// valuations of iterates, the parameter derivative of f^n(0), and exact
// numerators a_n for rational parameters c = a/b.

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "critorb/arith.hpp"

namespace critorb {

/// (tail m, period n) of a finite orbit; m = 0 means periodic.
struct PeriodType {
    std::uint64_t tail = 0;
    std::uint64_t period = 1;

    bool periodic() const noexcept { return tail == 0; }
    friend auto operator<=>(const PeriodType&, const PeriodType&) = default;
};

/// c = a/b in lowest terms with b >= 1.
class RationalParam {
public:
    RationalParam(BigInt a = 0, BigInt b = 1);
    /// Accepts "123", "-7" or "a/b".
    static RationalParam parse(const std::string& text);

    const BigInt& num() const noexcept { return a_; }
    const BigInt& den() const noexcept { return b_; }
    bool is_integer() const { return b_ == 1; }
    std::string str() const;

    friend bool operator==(const RationalParam&, const RationalParam&) = default;

private:
    BigInt a_;
    BigInt b_;
};

enum class OrbitKind { PcfInteger, PresumedWandering };
enum class PcfReason { None, Zero, MinusOneEvenDegree, MinusTwoQuadratic };

struct OrbitClassification {
    OrbitKind kind = OrbitKind::PresumedWandering;
    PcfReason reason = PcfReason::None;
};

std::string to_string(PcfReason reason);

struct CycleOptions {
    /// Visited values kept in a hash map up to this count; Brent's algorithm beyond.
    std::uint64_t hash_limit = 1'000'000;
};

struct PeriodTypeResult {
    PeriodType type;
    BigInt cycle_entry;  // f^m(x0) reduced mod p^t
};

/// Period type of the critical point 0 under x -> x^d + c in Z/p^t.
PeriodTypeResult period_type_mod(unsigned d, const Residue& c, const CycleOptions& options = {});
/// Period type of an arbitrary start point.
PeriodTypeResult orbit_period_type(unsigned d, const Residue& c, const Residue& start,
                                   const CycleOptions& options = {});
/// Word-size fast path (modulus < 2^63).
PeriodType period_type_u64(unsigned d, std::uint64_t c, std::uint64_t start, std::uint64_t modulus,
                           const CycleOptions& options = {});

/// f^1(0), ..., f^n(0) reduced into [0, modulus).
std::vector<BigInt> critical_orbit(unsigned d, const BigInt& c, std::uint64_t n, const BigInt& modulus);

/// A p-adic valuation that is either exact or only known to be >= value.
struct Valuation {
    std::uint64_t value = 0;
    bool at_least = false;

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

inline constexpr std::uint64_t kDefaultValuationCap = 1u << 16;

/// nu_p(f^n_{d,c}(0)), computed from orbits mod p^T with T doubling from 8
/// up to `cap`.
Valuation iterate_valuation(unsigned d, const BigInt& c, std::uint64_t n, const BigInt& p,
                            std::uint64_t cap = kDefaultValuationCap);

struct Primitivity {
    bool primitive = false;
    std::uint64_t valuation = 0;  // nu_p(a_n)
};

/// Whether p is a primitive prime divisor of a_n, the numerator of f^n(0).
/// Throws ZeroIterate when a_n = 0 and InvalidInput when p | b.
Primitivity is_primitive_divisor(unsigned d, const RationalParam& c, std::uint64_t n, const BigInt& p,
                                 std::uint64_t cap = kDefaultValuationCap);

/// (f^n(0), d/dc f^n(0)) at c, both in Z/p^N, via v <- v^d + c,
/// w <- d v^(d-1) w + 1 from (0, 0).
std::pair<Residue, Residue> orbit_with_derivative(unsigned d, const Residue& c, std::uint64_t n);

inline constexpr double kDefaultExactBitsGuard = double(1u << 27);

struct ExactIterate {
    BigInt numerator;             // a_n
    BigInt denominator_exponent;  // d^(n-1); denominator is b^(d^(n-1))
};

/// Rough upper estimate of log2 |a_n| used by the size guard.
double estimate_iterate_bits(unsigned d, const RationalParam& c, std::uint64_t n);

ExactIterate exact_iterate(unsigned d, const RationalParam& c, std::uint64_t n,
                           double max_bits = kDefaultExactBitsGuard);
/// a_1, ..., a_n.
std::vector<BigInt> exact_numerators(unsigned d, const RationalParam& c, std::uint64_t n,
                                     double max_bits = kDefaultExactBitsGuard);

OrbitClassification classify_integer_param(unsigned d, const BigInt& c);

/// Multiplier d^n * prod_{i<n} (f^i(entry))^(d-1) of the cycle through
/// `entry` of length `period`.
Residue cycle_multiplier(unsigned d, const Residue& c, const Residue& entry, std::uint64_t period);

void require_degree(unsigned d);

}  // namespace critorb
