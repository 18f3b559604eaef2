#pragma once

// Randomized and exhaustive property checks shared by the unit suites and
// the acceptance runner. Each returns how many instances were checked and
// a description of every counterexample.

#include <cstdint>
#include <string>
#include <vector>

namespace critorb::props {

struct Outcome {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty() && checked > 0; }
    std::string summary() const;
};

/// prod_{t|n} G_{d,t} = f^n(0) in Z[c], d in {2,3}, n <= 8.
Outcome moebius_inversion();
/// d=2, c in [-50,50], p < 50, n < 10, t <= 3: primitive with nu >= t iff
/// period type (0,n) mod p^t.
Outcome primitivity_iff_periodicity();
/// nu_p(f^(mn+a)(0) - f^((m-1)n+a)(0)) independent of a, p > d, m <= 3.
Outcome valuation_difference_equality();
/// (f^(mn) - f^((m-1)n)) | (f^(mn+1) - f^((m-1)n+1)) exactly, d=2, nm <= 4, |c| <= 20.
Outcome valuation_difference_divisibility();
/// Strictly preperiodic r mod p with unit multiplier: tail mod p^t equals
/// tail mod p (t <= 6) and cycle length is n, ns or ns p^e (t <= 4).
Outcome tail_stability_and_trichotomy();
/// 0 periodic mod p of period n, p > d: a strictly preperiodic critical
/// orbit mod p^t has tail = 1 mod n; a (1, n) type mod p^t needs
/// nu(f^n(0)) >= ceil(t/d), and never occurs over Z for non-PCF c.
Outcome critical_tail_exclusion();
/// Brute-force rho <= rho_upper_bound, d in {2,3}, |a| <= 30, b in {1,2,3,5,7}, n <= 4.
Outcome rho_bound_soundness();
/// adjust_power gives exactly nu = r, 100 random (d, n, p, r).
Outcome adjust_power_postcondition(std::uint64_t seed = 20240601);
/// Period of 0 mod p^(t-1) divides period mod p^t and tails are monotone.
Outcome projection_monotonicity(std::uint64_t seed = 7);
/// Roots of G_{2,n} mod p that are not simple force p | disc, n <= 5, p < 1000.
Outcome repeated_root_implies_disc();
/// p not dividing disc(G_{d,n}) implies condition (*) at n, d in {2,3}, p < 200.
Outcome disc_implies_condition_star();
/// Random small specs round-trip through build_parameter and verify_spec.
Outcome constructor_round_trip(std::uint64_t seed = 99);

}  // namespace critorb::props
