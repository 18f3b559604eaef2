#include "properties.hpp"

#include <random>
#include <sstream>

#include "critorb/bounds.hpp"
#include "critorb/constructor.hpp"
#include "critorb/dynatomic.hpp"
#include "critorb/error.hpp"
#include "critorb/lifting.hpp"
#include "critorb/orbit.hpp"
#include "critorb/pcf.hpp"

namespace critorb::props {

std::string Outcome::summary() const {
    std::ostringstream out;
    out << name << ": " << checked << " checked";
    if (skipped) out << ", " << skipped << " skipped";
    out << ", " << failures.size() << " failures";
    for (std::size_t i = 0; i < failures.size() && i < 5; ++i) out << "\n    " << failures[i];
    return out.str();
}

namespace {

template <class... Parts>
std::string describe(const Parts&... parts) {
    std::ostringstream out;
    ((out << parts << ' '), ...);
    return out.str();
}

// f^i(start) mod modulus for i = 0..len-1.
std::vector<BigInt> orbit_from(unsigned d, const BigInt& c, const BigInt& start, std::uint64_t len,
                               const BigInt& modulus) {
    std::vector<BigInt> out;
    BigInt v = mod_floor(start, modulus);
    const BigInt cc = mod_floor(c, modulus);
    for (std::uint64_t i = 0; i < len; ++i) {
        out.push_back(v);
        mpz_powm_ui(v.get_mpz_t(), v.get_mpz_t(), d, modulus.get_mpz_t());
        v = mod_floor(v + cc, modulus);
    }
    return out;
}

// nu_p(x) for x taken mod p^T; T when x = 0.
std::uint64_t capped_val(const BigInt& x, const BigInt& p, std::uint64_t T) {
    if (x == 0) return T;
    return val_p(x, p);
}

}  // namespace

Outcome moebius_inversion() {
    Outcome out{"moebius inversion"};
    for (unsigned d : {2u, 3u}) {
        for (std::uint64_t n = 1; n <= 8; ++n) {
            IntPoly prod({1});
            for (std::uint64_t t = 1; t <= n; ++t)
                if (n % t == 0) prod = prod * gleason_poly(d, t);
            ++out.checked;
            if (!(prod == iterate_poly(d, n))) out.failures.push_back(describe("d", d, "n", n));
            if (gleason_degree(d, n) != gleason_poly(d, n).degree())
                out.failures.push_back(describe("degree mismatch d", d, "n", n));
        }
    }
    return out;
}

Outcome primitivity_iff_periodicity() {
    Outcome out{"primitivity <=> periodicity"};
    const unsigned d = 2;
    for (long c = -50; c <= 50; ++c) {
        for (std::uint64_t p : primes_up_to(49)) {
            const BigInt pp(static_cast<unsigned long>(p));
            std::vector<PeriodType> types;
            for (unsigned t = 1; t <= 3; ++t) types.push_back(period_type_mod(d, Residue(pp, t, c)).type);
            for (std::uint64_t n = 1; n < 10; ++n) {
                Primitivity pr;
                try {
                    pr = is_primitive_divisor(d, RationalParam(c), n, pp);
                } catch (const ZeroIterate&) {
                    ++out.skipped;
                    continue;
                }
                for (unsigned t = 1; t <= 3; ++t) {
                    const PeriodType& pt = types[t - 1];
                    const bool lhs = pr.primitive && pr.valuation >= t;
                    const bool rhs = pt.periodic() && pt.period == n;
                    ++out.checked;
                    if (lhs != rhs)
                        out.failures.push_back(describe("c", c, "p", p, "n", n, "t", t, "primitive", pr.primitive,
                                                        "nu", pr.valuation, "type", pt.tail, pt.period));
                }
            }
        }
    }
    return out;
}

Outcome valuation_difference_equality() {
    Outcome out{"valuation of differences is independent of a"};
    const std::uint64_t T = 40;
    for (unsigned d : {2u, 3u}) {
        for (long c = -30; c <= 30; ++c) {
            for (std::uint64_t p : primes_up_to(60)) {
                if (p <= d) continue;
                const auto type = period_type_u64(d, mod_floor(BigInt(c), BigInt(static_cast<unsigned long>(p))).get_ui(), 0, p);
                if (!type.periodic() || type.period > 12) continue;
                const std::uint64_t n = type.period;
                const BigInt pp(static_cast<unsigned long>(p));
                const BigInt mod = critorb::pow(pp, T);
                const auto orb = orbit_from(d, c, 0, 4 * n + 1, mod);
                for (std::uint64_t m = 1; m <= 3; ++m) {
                    std::uint64_t first = 0;
                    for (std::uint64_t a = 1; a <= n; ++a) {
                        const std::uint64_t v = capped_val(mod_floor(orb[m * n + a] - orb[(m - 1) * n + a], mod), pp, T);
                        if (a == 1) first = v;
                        ++out.checked;
                        if (v != first && !(v >= T && first >= T))
                            out.failures.push_back(describe("d", d, "c", c, "p", p, "n", n, "m", m, "a", a));
                    }
                }
            }
        }
    }
    return out;
}

Outcome valuation_difference_divisibility() {
    Outcome out{"difference divisibility"};
    for (long c = -20; c <= 20; ++c) {
        const auto nums = exact_numerators(2, RationalParam(c), 5);
        auto f = [&](std::uint64_t i) { return i == 0 ? BigInt(0) : nums[i - 1]; };
        for (std::uint64_t n = 1; n <= 4; ++n) {
            for (std::uint64_t m = 1; m * n <= 4; ++m) {
                const BigInt lhs = f(m * n) - f((m - 1) * n);
                const BigInt rhs = f(m * n + 1) - f((m - 1) * n + 1);
                if (lhs == 0) {
                    ++out.skipped;
                    if (rhs != 0) out.failures.push_back(describe("zero divisor c", c, "n", n, "m", m));
                    continue;
                }
                ++out.checked;
                if (rhs % lhs != 0) out.failures.push_back(describe("c", c, "n", n, "m", m));
            }
        }
    }
    return out;
}

Outcome tail_stability_and_trichotomy() {
    Outcome out{"tail stability and cycle-length trichotomy"};
    for (unsigned d : {2u, 3u}) {
        for (long c = -12; c <= 12; ++c) {
            for (std::uint64_t p : primes_up_to(13)) {
                if (d % p == 0) continue;
                // Cycles mod p^t run to n s p^(t-1); keep every orbit below ~10^6 steps.
                const unsigned t_tail = p <= 7 ? 6 : 4;
                const BigInt pp(static_cast<unsigned long>(p));
                for (std::uint64_t r = 0; r < p; ++r) {
                    const Residue cres(pp, 1, c);
                    const auto base = orbit_period_type(d, cres, Residue(pp, 1, r));
                    if (base.type.periodic()) continue;
                    const Residue lambda = cycle_multiplier(d, cres, Residue(pp, 1, base.cycle_entry), base.type.period);
                    if (lambda.is_zero()) {
                        ++out.skipped;
                        continue;
                    }
                    const std::uint64_t n = base.type.period;
                    const std::uint64_t s = multiplicative_order(lambda.value().get_ui(), p);
                    for (unsigned t = 2; t <= t_tail; ++t) {
                        const auto lifted = orbit_period_type(d, Residue(pp, t, c), Residue(pp, t, r));
                        ++out.checked;
                        if (lifted.type.tail != base.type.tail)
                            out.failures.push_back(describe("tail d", d, "c", c, "p", p, "r", r, "t", t));
                        if (t > 4) continue;
                        std::uint64_t len = lifted.type.period;
                        bool ok = len == n || len == n * s;
                        if (!ok && len % (n * s) == 0) {
                            std::uint64_t q = len / (n * s);
                            while (q % p == 0) q /= p;
                            ok = q == 1;
                        }
                        if (!ok)
                            out.failures.push_back(describe("cycle d", d, "c", c, "p", p, "r", r, "t", t, "len", len,
                                                            "n", n, "s", s));
                    }
                }
            }
        }
    }
    return out;
}

Outcome critical_tail_exclusion() {
    Outcome out{"critical tail exclusion"};
    for (unsigned d : {2u, 3u}) {
        for (long c = -40; c <= 40; ++c) {
            for (std::uint64_t p : primes_up_to(50)) {
                if (p <= d) continue;
                const BigInt pp(static_cast<unsigned long>(p));
                const auto base = period_type_mod(d, Residue(pp, 1, c));
                if (!base.type.periodic()) continue;
                const std::uint64_t n = base.type.period;
                for (unsigned t = 2; t <= 4; ++t) {
                    const Residue cr(pp, t, c);
                    const auto lifted = period_type_mod(d, cr);
                    ++out.checked;
                    if (!lifted.type.periodic() && lifted.type.tail % n != 1 % n)
                        out.failures.push_back(describe("tail d", d, "c", c, "p", p, "t", t, "m", lifted.type.tail, "n", n));
                    const auto orb = critical_orbit(d, c, n + 1, cr.modulus());
                    // f^(n+1) = f forces (f^n)^d = 0 mod p^t, hence nu(f^n(0)) >= ceil(t/d).
                    if (orb[n] == orb[0]) {
                        const unsigned need = (t + d - 1) / d;
                        if (orb[n - 1] != 0 && val_p(orb[n - 1], p) < need)
                            out.failures.push_back(describe("m=0 d", d, "c", c, "p", p, "t", t));
                    }
                }
                // Over Z itself the (1, n) type never occurs.
                if (n <= 10 && classify_integer_param(d, BigInt(c)).kind != OrbitKind::PcfInteger) {
                    const auto ex = exact_numerators(d, RationalParam(c, 1), n + 1);
                    ++out.checked;
                    if (ex[n] == ex[0])
                        out.failures.push_back(describe("exact m=0 d", d, "c", c, "p", p));
                }
            }
        }
    }
    return out;
}

Outcome rho_bound_soundness() {
    Outcome out{"rho upper bound soundness"};
    const FactorBudget budget{1'000'000, 20'000, kDefaultSeed};
    for (unsigned d : {2u, 3u}) {
        for (long b : {1L, 2L, 3L, 5L, 7L}) {
            for (long a = -30; a <= 30; ++a) {
                if (a == 0 || std::gcd(a, b) != 1) continue;
                const RationalParam c(a, b);
                if (c.is_integer() && classify_integer_param(d, c.num()).kind == OrbitKind::PcfInteger) {
                    ++out.skipped;
                    continue;
                }
                for (std::uint64_t n = 1; n <= 4; ++n) {
                    const RhoBound bound = rho_upper_bound(d, n, c);
                    const RhoCount count = count_primitive_primes(d, c, n, budget);
                    ++out.checked;
                    // Incomplete factorizations give lower bounds, which still must not exceed the bound.
                    if (double(count.rho) > bound.value + 1e-9)
                        out.failures.push_back(describe("d", d, "c", c.str(), "n", n, "rho", count.rho, "bound",
                                                        bound.value, bound.case_id));
                }
            }
        }
    }
    return out;
}

Outcome adjust_power_postcondition(std::uint64_t seed) {
    Outcome out{"adjust_power exact valuation"};
    std::mt19937_64 rng(seed);
    const auto primes = primes_up_to(97);
    std::uint64_t attempts = 0;
    while (out.checked < 100 && attempts < 5000) {
        ++attempts;
        const unsigned d = 2 + rng() % 2;
        const std::uint64_t n = 1 + rng() % 5;
        const std::uint64_t p = primes[rng() % primes.size()];
        const unsigned r = 1 + rng() % 8;
        if (d % p == 0) continue;
        const BigInt pp(static_cast<unsigned long>(p));
        const auto base = find_base(d, n, pp);
        if (!base) {
            ++out.skipped;
            continue;
        }
        LiftResult lift;
        try {
            lift = hensel_lift(d, n, pp, *base, r + 2);
        } catch (const HenselHypothesisFails&) {
            ++out.skipped;
            continue;
        }
        if (lift.derivative_valuation != 0) {
            ++out.skipped;
            continue;
        }
        ++out.checked;
        try {
            const BigInt cr = adjust_power(lift, r);
            const Primitivity pr = is_primitive_divisor(d, RationalParam(cr), n, pp);
            if (!pr.primitive || pr.valuation != r)
                out.failures.push_back(describe("d", d, "n", n, "p", p, "r", r, "c_r", cr));
        } catch (const Error& e) {
            out.failures.push_back(describe("d", d, "n", n, "p", p, "r", r, e.what()));
        }
    }
    return out;
}

Outcome projection_monotonicity(std::uint64_t seed) {
    Outcome out{"projection monotonicity"};
    std::mt19937_64 rng(seed);
    const auto primes = primes_up_to(97);
    for (int trial = 0; trial < 300; ++trial) {
        const unsigned d = 2 + rng() % 3;
        const std::uint64_t p = primes[rng() % primes.size()];
        const BigInt pp(static_cast<unsigned long>(p));
        const BigInt c = BigInt(static_cast<unsigned long>(rng() % 1'000'000)) - 500'000;
        auto prev = period_type_mod(d, Residue(pp, 1, c)).type;
        // Largest t with p^t <= 10^6 (capped at 6) bounds the orbit length.
        unsigned t_max = 1;
        for (std::uint64_t q = p * p; q <= 1'000'000 && t_max < 6; q *= p) ++t_max;
        for (unsigned t = 2; t <= t_max; ++t) {
            const auto cur = period_type_mod(d, Residue(pp, t, c)).type;
            ++out.checked;
            if (cur.period % prev.period != 0 || prev.tail > cur.tail)
                out.failures.push_back(describe("d", d, "p", p, "c", c, "t", t));
            prev = cur;
        }
    }
    return out;
}

Outcome repeated_root_implies_disc() {
    Outcome out{"repeated root implies p | disc"};
    for (std::uint64_t n = 1; n <= 5; ++n) {
        const IntPoly G = gleason_poly(2, n);
        const BigInt disc = discriminant(G);
        for (std::uint64_t p : primes_up_to(999)) {
            for (const auto& root : roots_mod_p(G, p)) {
                if (is_simple_root(G, p, BigInt(static_cast<unsigned long>(root.root)))) continue;
                ++out.checked;
                if (!mpz_divisible_p(disc.get_mpz_t(), BigInt(static_cast<unsigned long>(p)).get_mpz_t()))
                    out.failures.push_back(describe("n", n, "p", p, "root", root.root));
            }
        }
    }
    return out;
}

Outcome disc_implies_condition_star() {
    Outcome out{"p not dividing disc implies (*)"};
    for (unsigned d : {2u, 3u}) {
        const std::uint64_t max_n = d == 2 ? 10 : 6;
        for (std::uint64_t p : primes_up_to(199)) {
            const PcfCensus census = enumerate_pcf(d, p);
            for (const auto& [n, count] : census.periodic_count) {
                if (n > max_n) {
                    ++out.skipped;
                    continue;
                }
                if (p_divides_discriminant(gleason_poly(d, n), p)) continue;
                ++out.checked;
                if (!check_condition_star(census, n).holds) out.failures.push_back(describe("d", d, "p", p, "n", n));
            }
        }
    }
    return out;
}

Outcome constructor_round_trip(std::uint64_t seed) {
    Outcome out{"constructor round trip"};
    std::mt19937_64 rng(seed);
    ConstructorOptions options;
    options.prime_ceiling = 50;
    for (int trial = 0; trial < 40; ++trial) {
        DivisibilitySpec spec;
        spec.d = 2;
        const int count = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < count; ++i) {
            PrimePowerConstraint c;
            c.n = 1 + rng() % 4;
            c.k = 1 + static_cast<unsigned>(rng() % 6);
            spec.constraints.push_back(c);
        }
        ConstructionReport report;
        try {
            report = build_parameter(spec, options);
        } catch (const SearchExhausted&) {
            ++out.skipped;
            continue;
        } catch (const Error& e) {
            out.failures.push_back(describe("trial", trial, e.what()));
            continue;
        }
        ++out.checked;
        DivisibilitySpec pinned = spec;
        std::set<BigInt> seen;
        for (std::size_t i = 0; i < report.records.size(); ++i) {
            const auto& rec = report.records[i];
            pinned.constraints[i].p = rec.p;
            if (!seen.insert(rec.p).second || rec.p == 2) out.failures.push_back(describe("prime reuse", rec.p));
            if (mod_floor(report.c, rec.modulus) != rec.residue)
                out.failures.push_back(describe("crt residue", rec.p));
        }
        for (const auto& v : verify_spec(2, report.c, pinned))
            if (!v.ok) out.failures.push_back(describe("verify n", v.n, "p", v.p, "k", v.k));
        // determinism
        if (build_parameter(spec, options).c != report.c) out.failures.push_back(describe("nondeterministic", trial));
    }
    return out;
}

}  // namespace critorb::props
