#include "critorb/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "critorb/error.hpp"

namespace critorb {

void require_degree(unsigned d) {
    if (d < 2) throw InvalidInput("degree d must be >= 2");
}

// ---------------------------------------------------------------------------
// RationalParam

RationalParam::RationalParam(BigInt a, BigInt b) : a_(std::move(a)), b_(std::move(b)) {
    if (b_ == 0) throw InvalidInput("zero denominator");
    if (b_ < 0) {
        a_ = -a_;
        b_ = -b_;
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    if (g > 1) {
        a_ /= g;
        b_ /= g;
    }
}

RationalParam RationalParam::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return RationalParam(parse_bigint(text), 1);
    return RationalParam(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
}

std::string RationalParam::str() const {
    return b_ == 1 ? to_string(a_) : to_string(a_) + "/" + to_string(b_);
}

std::string to_string(PcfReason reason) {
    switch (reason) {
        case PcfReason::Zero: return "c=0";
        case PcfReason::MinusOneEvenDegree: return "c=-1, d even";
        case PcfReason::MinusTwoQuadratic: return "c=-2, d=2";
        case PcfReason::None: break;
    }
    return "none";
}

OrbitClassification classify_integer_param(unsigned d, const BigInt& c) {
    require_degree(d);
    if (c == 0) return {OrbitKind::PcfInteger, PcfReason::Zero};
    if (c == -1 && d % 2 == 0) return {OrbitKind::PcfInteger, PcfReason::MinusOneEvenDegree};
    if (c == -2 && d == 2) return {OrbitKind::PcfInteger, PcfReason::MinusTwoQuadratic};
    return {};
}

// ---------------------------------------------------------------------------
// Cycle detection

namespace {

struct BigIntHash {
    std::size_t operator()(const BigInt& x) const noexcept {
        std::size_t h = mpz_size(x.get_mpz_t());
        for (std::size_t i = 0; i < mpz_size(x.get_mpz_t()); ++i)
            h = h * 0x9e3779b97f4a7c15ULL ^ mpz_getlimbn(x.get_mpz_t(), static_cast<mp_size_t>(i));
        return h;
    }
};

template <class T>
struct Detected {
    PeriodType type;
    T entry;
};

template <class T, class Step>
Detected<T> brent_cycle(const T& x0, Step step) {
    std::uint64_t power = 1, lam = 1;
    T tortoise = x0;
    T hare = step(x0);
    while (!(tortoise == hare)) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = step(hare);
        ++lam;
    }
    tortoise = x0;
    hare = x0;
    for (std::uint64_t i = 0; i < lam; ++i) hare = step(hare);
    std::uint64_t mu = 0;
    while (!(tortoise == hare)) {
        tortoise = step(tortoise);
        hare = step(hare);
        ++mu;
    }
    return {{mu, lam}, tortoise};
}

template <class T, class Hash, class Step>
Detected<T> detect_cycle(const T& x0, Step step, std::uint64_t hash_limit) {
    std::unordered_map<T, std::uint64_t, Hash> seen;
    T x = x0;
    for (std::uint64_t i = 0; i < hash_limit; ++i) {
        auto [it, inserted] = seen.emplace(x, i);
        if (!inserted) return {{it->second, i - it->second}, x};
        x = step(x);
    }
    return brent_cycle(x0, step);
}

std::uint64_t pow_u64(std::uint64_t x, unsigned d, std::uint64_t m) { return powmod_u64(x, d, m); }

}  // namespace

PeriodType period_type_u64(unsigned d, std::uint64_t c, std::uint64_t start, std::uint64_t modulus,
                           const CycleOptions& options) {
    require_degree(d);
    c %= modulus;
    auto step = [&](std::uint64_t x) {
        std::uint64_t y = pow_u64(x, d, modulus) + c;
        return y >= modulus ? y - modulus : y;
    };
    return detect_cycle<std::uint64_t, std::hash<std::uint64_t>>(start % modulus, step, options.hash_limit).type;
}

PeriodTypeResult orbit_period_type(unsigned d, const Residue& c, const Residue& start,
                                   const CycleOptions& options) {
    require_degree(d);
    if (start.modulus() != c.modulus()) throw InvalidInput("start point and parameter in different rings");
    const BigInt& m = c.modulus();
    if (mpz_sizeinbase(m.get_mpz_t(), 2) < 63) {
        const std::uint64_t mm = to_u64(m, "modulus");
        const std::uint64_t cc = to_u64(c.value(), "c");
        auto step = [&](std::uint64_t x) {
            std::uint64_t y = pow_u64(x, d, mm) + cc;
            return y >= mm ? y - mm : y;
        };
        auto found = detect_cycle<std::uint64_t, std::hash<std::uint64_t>>(to_u64(start.value(), "start"), step,
                                                                           options.hash_limit);
        return {found.type, BigInt(static_cast<unsigned long>(found.entry))};
    }
    auto step = [&](const BigInt& x) {
        BigInt y;
        mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), d, m.get_mpz_t());
        y += c.value();
        if (y >= m) y -= m;
        return y;
    };
    auto found = detect_cycle<BigInt, BigIntHash>(start.value(), step, options.hash_limit);
    return {found.type, found.entry};
}

PeriodTypeResult period_type_mod(unsigned d, const Residue& c, const CycleOptions& options) {
    return orbit_period_type(d, c, c.with_value(0), options);
}

std::vector<BigInt> critical_orbit(unsigned d, const BigInt& c, std::uint64_t n, const BigInt& modulus) {
    require_degree(d);
    std::vector<BigInt> out;
    out.reserve(n);
    const BigInt cc = mod_floor(c, modulus);
    BigInt v = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        mpz_powm_ui(v.get_mpz_t(), v.get_mpz_t(), d, modulus.get_mpz_t());
        v += cc;
        if (v >= modulus) v -= modulus;
        out.push_back(v);
    }
    return out;
}

Residue cycle_multiplier(unsigned d, const Residue& c, const Residue& entry, std::uint64_t period) {
    require_degree(d);
    const BigInt& m = c.modulus();
    BigInt lambda = 1;
    BigInt x = entry.value();
    for (std::uint64_t i = 0; i < period; ++i) {
        BigInt term;
        mpz_powm_ui(term.get_mpz_t(), x.get_mpz_t(), d - 1, m.get_mpz_t());
        lambda = lambda * term * d % m;
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), d, m.get_mpz_t());
        x = (x + c.value()) % m;
    }
    return c.with_value(lambda);
}

// ---------------------------------------------------------------------------
// Valuations

namespace {

BigInt nth_iterate_mod(unsigned d, const BigInt& c, std::uint64_t n, const BigInt& modulus) {
    const BigInt cc = mod_floor(c, modulus);
    BigInt v = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        mpz_powm_ui(v.get_mpz_t(), v.get_mpz_t(), d, modulus.get_mpz_t());
        v += cc;
        if (v >= modulus) v -= modulus;
    }
    return v;
}

// c given as a p-adic number by a callback producing c mod p^T.
template <class ParamAt>
Valuation adaptive_valuation(unsigned d, ParamAt param_at, std::uint64_t n, const BigInt& p, std::uint64_t cap) {
    if (cap < 1) throw InvalidInput("valuation cap must be >= 1");
    std::uint64_t T = std::min<std::uint64_t>(8, cap);
    while (true) {
        const BigInt modulus = critorb::pow(p, static_cast<unsigned long>(T));
        const BigInt v = nth_iterate_mod(d, param_at(modulus), n, modulus);
        if (v != 0) {
            BigInt rest;
            return {mpz_remove(rest.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()), false};
        }
        if (T >= cap) return {cap, true};
        T = std::min(2 * T, cap);
    }
}

}  // namespace

Valuation iterate_valuation(unsigned d, const BigInt& c, std::uint64_t n, const BigInt& p, std::uint64_t cap) {
    require_degree(d);
    if (n < 1) throw InvalidInput("iterate index n must be >= 1");
    if (!is_prime(p)) throw InvalidInput(to_string(p) + " is not prime");
    return adaptive_valuation(d, [&](const BigInt&) { return c; }, n, p, cap);
}

Primitivity is_primitive_divisor(unsigned d, const RationalParam& c, std::uint64_t n, const BigInt& p,
                                 std::uint64_t cap) {
    require_degree(d);
    if (n < 1) throw InvalidInput("iterate index n must be >= 1");
    if (!is_prime(p)) throw InvalidInput(to_string(p) + " is not prime");
    if (mpz_divisible_p(c.den().get_mpz_t(), p.get_mpz_t()))
        throw InvalidInput("p divides the denominator of c");
    if (c.is_integer()) {
        const BigInt& a = c.num();
        if (a == 0 || (a == -1 && d % 2 == 0 && n % 2 == 0)) throw ZeroIterate(n);
    }
    // With p coprime to b, a_n and f^n(0) differ by the p-adic unit
    // b^(d^(n-1)), so the orbit of the p-adic number a/b carries nu_p(a_n).
    auto param_at = [&](const BigInt& modulus) {
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), c.den().get_mpz_t(), modulus.get_mpz_t());
        return mod_floor(c.num() * inv, modulus);
    };
    const BigInt c_mod_p = param_at(p);
    const auto early = critical_orbit(d, c_mod_p, n, p);
    for (std::uint64_t i = 0; i + 1 < n; ++i) {
        if (early[i] == 0) return {false, 0};
    }
    if (early[n - 1] != 0) return {false, 0};
    Valuation v = adaptive_valuation(d, param_at, n, p, cap);
    if (v.at_least)
        throw SearchExhausted("valuation of a_" + std::to_string(n) + " at " + to_string(p) + " exceeds cap " +
                              std::to_string(cap));
    return {true, v.value};
}

std::pair<Residue, Residue> orbit_with_derivative(unsigned d, const Residue& c, std::uint64_t n) {
    require_degree(d);
    if (n < 1) throw InvalidInput("iterate index n must be >= 1");
    const BigInt& m = c.modulus();
    BigInt v = 0, w = 0, t;
    for (std::uint64_t i = 0; i < n; ++i) {
        mpz_powm_ui(t.get_mpz_t(), v.get_mpz_t(), d - 1, m.get_mpz_t());
        w = (t * w * d + 1) % m;
        v = (t * v + c.value()) % m;
    }
    return {c.with_value(v), c.with_value(w)};
}

// ---------------------------------------------------------------------------
// Exact numerators

double estimate_iterate_bits(unsigned d, const RationalParam& c, std::uint64_t n) {
    BigInt h = abs(c.num()) > c.den() ? BigInt(abs(c.num())) : c.den();
    const double log_h = std::log2(h.get_d() > 0 ? h.get_d() : 1.0);
    return std::pow(double(d), double(n - 1)) * (log_h + 2.0);
}

std::vector<BigInt> exact_numerators(unsigned d, const RationalParam& c, std::uint64_t n, double max_bits) {
    require_degree(d);
    if (n < 1) throw InvalidInput("iterate index n must be >= 1");
    const double estimate = estimate_iterate_bits(d, c, n);
    if (estimate > max_bits) throw SizeGuardExceeded("exact iterate a_" + std::to_string(n) + " refused", estimate);
    // a_{i+1} = a_i^d + a * b^(d^i - 1)
    std::vector<BigInt> out;
    out.reserve(n);
    const BigInt& a = c.num();
    const BigInt& b = c.den();
    BigInt b_power = b;  // b^(d^i)
    BigInt ai = a;
    out.push_back(ai);
    for (std::uint64_t i = 1; i < n; ++i) {
        mpz_pow_ui(b_power.get_mpz_t(), b_power.get_mpz_t(), d);
        BigInt next;
        mpz_pow_ui(next.get_mpz_t(), ai.get_mpz_t(), d);
        next += a * (b_power / b);
        ai = std::move(next);
        out.push_back(ai);
    }
    return out;
}

ExactIterate exact_iterate(unsigned d, const RationalParam& c, std::uint64_t n, double max_bits) {
    auto all = exact_numerators(d, c, n, max_bits);
    BigInt exponent = critorb::pow(BigInt(d), static_cast<unsigned long>(n - 1));
    return {std::move(all.back()), exponent};
}

}  // namespace critorb
