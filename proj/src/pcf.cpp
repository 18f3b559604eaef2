#include "critorb/pcf.hpp"

#include <algorithm>
#include <thread>

#include "critorb/dynatomic.hpp"
#include "critorb/error.hpp"
#include "critorb/lifting.hpp"

namespace critorb {

std::vector<std::uint64_t> PcfCensus::periodic_with_period(std::uint64_t n) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t c = 0; c < entries.size(); ++c)
        if (entries[c].periodic() && entries[c].period == n) out.push_back(c);
    return out;
}

PcfCensus enumerate_pcf(unsigned d, std::uint64_t p, unsigned threads) {
    require_degree(d);
    require_word_prime(p);
    PcfCensus census;
    census.d = d;
    census.p = p;
    census.entries.resize(p);
    // Disjoint c ranges per thread; counting happens afterwards in c order.
    const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, p / 64 + 1)));
    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t c = lo; c < hi; ++c) census.entries[c] = period_type_u64(d, c, 0, p);
    };
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (p + workers - 1) / workers;
    for (unsigned t = 1; t < workers; ++t)
        pool.emplace_back(run, std::min(p, t * chunk), std::min(p, (t + 1) * chunk));
    run(0, std::min(p, chunk));
    for (auto& th : pool) th.join();
    for (const auto& e : census.entries) {
        if (e.periodic())
            ++census.periodic_count[e.period];
        else
            ++census.preperiodic_count;
    }
    return census;
}

namespace {

// d/dc f^n_{d,c}(0) mod p.
std::uint64_t derivative_mod_p(unsigned d, std::uint64_t c, std::uint64_t n, std::uint64_t p) {
    std::uint64_t v = 0, w = 0;
    const std::uint64_t dd = d % p;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint64_t t = powmod_u64(v, d - 1, p);
        w = mulmod_u64(mulmod_u64(dd, t, p), w, p) + 1;
        if (w >= p) w -= p;
        v = mulmod_u64(t, v, p) + c;
        if (v >= p) v -= p;
    }
    return w;
}

}  // namespace

ConditionStar check_condition_star(const PcfCensus& census, std::uint64_t n) {
    if (n == 0 || n > census.p)
        throw InvalidInput("condition (*) needs 1 <= n <= p, got n = " + std::to_string(n));
    ConditionStar out;
    out.n = n;
    out.checked = census.periodic_with_period(n);
    for (std::uint64_t c : out.checked)
        if (derivative_mod_p(census.d, c, n, census.p) == 0) out.witnesses.push_back(c);
    out.holds = out.witnesses.empty();
    return out;
}

ConditionStar check_condition_star(unsigned d, std::uint64_t p, std::uint64_t n) {
    return check_condition_star(enumerate_pcf(d, p), n);
}

ConditionStarStar check_condition_star_star(unsigned d, std::uint64_t p, std::optional<std::uint64_t> max_period) {
    const PcfCensus census = enumerate_pcf(d, p);
    ConditionStarStar out;
    for (const auto& [n, count] : census.periodic_count) {
        if (max_period && n > *max_period) continue;
        out.per_period.push_back(check_condition_star(census, n));
        if (!out.per_period.back().holds) out.holds = false;
    }
    return out;
}

CorrespondenceReport correspondence_report(unsigned d, std::uint64_t p, unsigned precision) {
    require_degree(d);
    require_word_prime(p);
    if (precision == 0) throw InvalidInput("precision N must be >= 1");
    const PcfCensus census = enumerate_pcf(d, p);
    CorrespondenceReport rep;
    rep.d = d;
    rep.p = p;
    rep.precision = precision;
    rep.periodic_count = census.periodic_count;
    rep.preperiodic_count = census.preperiodic_count;

    bool star_star = true;
    for (const auto& [n, count] : census.periodic_count)
        if (!check_condition_star(census, n).holds) star_star = false;
    if (p <= d) {
        rep.hypothesis = "p <= d";
    } else if (star_star) {
        rep.guaranteed = true;
        rep.hypothesis = "condition (**)";
    } else {
        rep.hypothesis = "condition (**) fails";
    }

    const BigInt pp(static_cast<unsigned long>(p));
    const BigInt modulus = critorb::pow(pp, precision);
    for (std::uint64_t c = 0; c < p; ++c) {
        const PeriodType& type = census.entries[c];
        if (!type.periodic()) continue;
        CorrespondenceLift lift;
        lift.c = c;
        lift.n = type.period;
        try {
            const LiftResult r = hensel_lift(d, type.period, pp, BigInt(static_cast<unsigned long>(c)), precision);
            lift.lifted = r.lifted_value.value();
            const auto pt = period_type_mod(d, r.lifted_value);
            lift.periodic_mod_pN = pt.type.periodic() && pt.type.period == type.period;
        } catch (const Error& e) {
            lift.error = e.what();
        }
        rep.lifts.push_back(std::move(lift));
    }
    return rep;
}

}  // namespace critorb
