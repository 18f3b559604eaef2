#pragma once

// Newton lifting of a base parameter c0 to a p-adic c-bar with 0 exactly
// periodic of period n, and the +p^r perturbation that pins nu_p(f^n(0)) = r.

#include <cstdint>
#include <optional>
#include <vector>

#include "critorb/arith.hpp"
#include "critorb/error.hpp"

namespace critorb {

struct LiftResult {
    unsigned d = 2;
    BigInt p;
    std::uint64_t n = 1;
    unsigned precision = 1;  // N
    Residue lifted_value{2, 1, 0};
    /// nu_p(c-bar - c0) = nu_p(F(c0)) - nu_p(F'(c0)); a lower bound when
    /// F(c0) vanished to working precision.
    std::uint64_t shift_valuation = 0;
    bool shift_at_least = false;
    std::uint64_t value_valuation = 0;       // nu_p(F(c0)), see shift_at_least
    std::uint64_t derivative_valuation = 0;  // nu_p(F'(c0))
    BigInt base_c0;
    unsigned newton_steps = 0;
};

/// Result of trying every shift c0 + p*j, 0 <= j < p, against f^n(0) = 0 mod p^2.
struct ShiftScan {
    bool performed = false;
    std::uint64_t tested = 0;
    std::vector<std::uint64_t> vanishing;  // shifts j with f^n(0) = 0 mod p^2
};

/// nu(F) <= 2 nu(F'), so Newton iteration is not guaranteed to converge.
class HenselHypothesisFails : public InvalidInput {
public:
    HenselHypothesisFails(std::uint64_t value_valuation, std::uint64_t derivative_valuation, ShiftScan scan);
    std::uint64_t value_valuation() const noexcept { return vf_; }
    std::uint64_t derivative_valuation() const noexcept { return vdf_; }
    const ShiftScan& scan() const noexcept { return scan_; }

private:
    std::uint64_t vf_;
    std::uint64_t vdf_;
    ShiftScan scan_;
};

/// Largest p for which the failure path runs its exhaustive shift scan.
inline constexpr std::uint64_t kShiftScanLimit = 100'000;

LiftResult hensel_lift(unsigned d, std::uint64_t n, const BigInt& p, const BigInt& c0, unsigned precision);

/// Every shift c0 + p*j (0 <= j < p) tested against f^n(0) = 0 mod p^2.
ShiftScan scan_shifts(unsigned d, std::uint64_t n, const BigInt& p, const BigInt& c0);

/// c_r = (c-bar mod p^(r+1)) + p^r, checked to have p primitive at n with
/// nu_p(f^n(0)) = r. Requires precision >= r+1 and nu_p(F'(c0)) = 0.
BigInt adjust_power(const LiftResult& lift, unsigned r);

}  // namespace critorb
