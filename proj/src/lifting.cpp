#include "critorb/lifting.hpp"

#include <cmath>

#include "critorb/orbit.hpp"

namespace critorb {

namespace {

std::string failure_message(std::uint64_t vf, std::uint64_t vdf, const ShiftScan& scan) {
    std::string msg = "Hensel hypothesis fails: nu(F) = " + std::to_string(vf) + ", nu(F') = " +
                      std::to_string(vdf) + ", need nu(F) > 2 nu(F')";
    if (scan.performed)
        msg += "; " + std::to_string(scan.vanishing.size()) + " of " + std::to_string(scan.tested) +
               " shifts vanish mod p^2";
    return msg;
}

// f^i(0) mod p for i = 1..n must be nonzero before n and zero at n.
void require_primitive_mod_p(unsigned d, std::uint64_t n, const BigInt& p, const BigInt& c0) {
    const auto orbit = critical_orbit(d, c0, n, p);
    for (std::uint64_t i = 0; i + 1 < n; ++i)
        if (orbit[i] == 0)
            throw InvalidInput("p = " + to_string(p) + " divides f^" + std::to_string(i + 1) +
                               "(0), so it is not a primitive divisor at n = " + std::to_string(n));
    if (orbit[n - 1] != 0)
        throw InvalidInput("p = " + to_string(p) + " does not divide f^" + std::to_string(n) + "(0)");
}

}  // namespace

HenselHypothesisFails::HenselHypothesisFails(std::uint64_t vf, std::uint64_t vdf, ShiftScan scan)
    : InvalidInput(failure_message(vf, vdf, scan)), vf_(vf), vdf_(vdf), scan_(std::move(scan)) {}

ShiftScan scan_shifts(unsigned d, std::uint64_t n, const BigInt& p, const BigInt& c0) {
    ShiftScan scan;
    scan.performed = true;
    const std::uint64_t pp = to_u64(p, "p");
    for (std::uint64_t j = 0; j < pp; ++j) {
        const Residue c(p, 2, c0 + p * BigInt(static_cast<unsigned long>(j)));
        const auto fd = orbit_with_derivative(d, c, n);
        if (fd.first.is_zero()) scan.vanishing.push_back(j);
        ++scan.tested;
    }
    return scan;
}

LiftResult hensel_lift(unsigned d, std::uint64_t n, const BigInt& p, const BigInt& c0, unsigned precision) {
    require_degree(d);
    if (n == 0) throw InvalidInput("iterate index n must be >= 1");
    if (precision == 0) throw InvalidInput("precision N must be >= 1");
    if (!is_prime(p)) throw InvalidInput("p = " + to_string(p) + " is not prime");
    require_primitive_mod_p(d, n, p, c0);

    // Valuations of F(c0) and F'(c0) at a precision that sees F' and
    // covers the working precision N + nu(F').
    unsigned T = std::max(8u, precision + 1);
    std::uint64_t vf = 0, vdf = 0;
    bool vf_capped = false;
    for (;;) {
        const auto fd = orbit_with_derivative(d, Residue(p, T, c0), n);
        if (!fd.second.is_zero()) {
            vdf = fd.second.valuation();
            vf = fd.first.valuation();
            vf_capped = fd.first.is_zero();
            if (T >= precision + 2 * vdf + 1) break;
        }
        if (T >= kDefaultValuationCap)
            throw SearchExhausted("derivative of f^n(0) vanishes mod p^" + std::to_string(T));
        T = static_cast<unsigned>(std::min<std::uint64_t>(2ull * T, kDefaultValuationCap));
    }
    if (!vf_capped && vf <= 2 * vdf) {
        ShiftScan scan;
        if (p <= kShiftScanLimit) scan = scan_shifts(d, n, p, c0);
        throw HenselHypothesisFails(vf, vdf, std::move(scan));
    }

    // Newton in Z/p^W with W = N + e; the quotient F/F' is taken as
    // (F / p^e) * (F' / p^e)^(-1) mod p^N.
    const unsigned e = static_cast<unsigned>(vdf);
    const unsigned W = precision + e;
    const BigInt pe = critorb::pow(p, e);
    const BigInt pN = critorb::pow(p, precision);
    Residue c(p, W, c0);
    const unsigned max_steps = static_cast<unsigned>(std::ceil(std::log2(double(W) + 1))) + 4;
    unsigned steps = 0;
    for (;; ++steps) {
        const auto fd = orbit_with_derivative(d, c, n);
        if (fd.first.is_zero()) break;
        if (steps >= max_steps)
            throw InconsistencyError("Newton iteration did not converge within " + std::to_string(max_steps) +
                                     " steps");
        if (fd.second.valuation() != e || fd.first.valuation() <= e)
            throw InconsistencyError("Newton iterate left the Hensel basin");
        BigInt f_scaled, df_scaled, inv;
        mpz_divexact(f_scaled.get_mpz_t(), fd.first.value().get_mpz_t(), pe.get_mpz_t());
        mpz_divexact(df_scaled.get_mpz_t(), fd.second.value().get_mpz_t(), pe.get_mpz_t());
        if (!mpz_invert(inv.get_mpz_t(), df_scaled.get_mpz_t(), pN.get_mpz_t()))
            throw InconsistencyError("scaled derivative is not a unit");
        c = c.with_value(c.value() - mod_floor(f_scaled * inv, pN));
    }

    LiftResult out;
    out.d = d;
    out.p = p;
    out.n = n;
    out.precision = precision;
    out.lifted_value = c.reduce_to(precision);
    out.value_valuation = vf;
    out.derivative_valuation = vdf;
    out.shift_valuation = vf - vdf;
    out.shift_at_least = vf_capped;
    out.base_c0 = c0;
    out.newton_steps = steps;

    // Exact period n is decided mod p, which the lift does not change.
    require_primitive_mod_p(d, n, p, out.lifted_value.value());
    return out;
}

BigInt adjust_power(const LiftResult& lift, unsigned r) {
    if (r == 0) throw InvalidInput("target valuation r must be >= 1");
    if (lift.precision < r + 1)
        throw InvalidInput("lift precision " + std::to_string(lift.precision) + " is below r + 1 = " +
                           std::to_string(r + 1));
    if (lift.derivative_valuation != 0)
        throw InvalidInput("adjust_power needs nu_p(F'(c0)) = 0, got " + std::to_string(lift.derivative_valuation));
    const BigInt pr = critorb::pow(lift.p, r);
    const BigInt cr = mod_floor(lift.lifted_value.value(), pr * lift.p) + pr;
    const Primitivity check = is_primitive_divisor(lift.d, RationalParam(cr), lift.n, lift.p);
    if (!check.primitive || check.valuation != r)
        throw InconsistencyError("adjusted parameter " + to_string(cr) + " has nu_p = " +
                                 std::to_string(check.valuation) + (check.primitive ? "" : " (not primitive)") +
                                 ", expected " + std::to_string(r));
    return cr;
}

}  // namespace critorb
