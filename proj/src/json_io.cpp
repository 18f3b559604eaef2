#include "critorb/json_io.hpp"

#include "critorb/error.hpp"

namespace critorb::json_io {

json big(const BigInt& x) { return to_string(x); }

BigInt big_from(const json& j, const char* what) {
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
    throw InvalidInput(std::string(what) + " must be a decimal string");
}

std::string rational(const Rational& q) {
    return to_string(q.get_num()) + "/" + to_string(q.get_den());
}

json to_json(const PeriodType& t) { return {{"m", t.tail}, {"n", t.period}}; }

json to_json(const IntPoly& f) {
    json arr = json::array();
    for (const auto& c : f.coefficients()) arr.push_back(big(c));
    return arr;
}

json to_json(const std::vector<RootMultiplicity>& roots) {
    json arr = json::array();
    for (const auto& r : roots) arr.push_back({{"root", r.root}, {"multiplicity", r.multiplicity}});
    return arr;
}

json to_json(const LiftResult& lift) {
    return {{"d", lift.d},
            {"p", big(lift.p)},
            {"n", lift.n},
            {"N", lift.precision},
            {"value", big(lift.lifted_value.value())},
            {"modulus", big(lift.lifted_value.modulus())},
            {"shift_valuation", lift.shift_valuation},
            {"shift_valuation_at_least", lift.shift_at_least},
            {"value_valuation", lift.value_valuation},
            {"derivative_valuation", lift.derivative_valuation},
            {"base_c0", big(lift.base_c0)},
            {"newton_steps", lift.newton_steps}};
}

json to_json(const HenselHypothesisFails& err) {
    json j = {{"error", err.what()},
              {"kind", "hensel_hypothesis_fails"},
              {"value_valuation", err.value_valuation()},
              {"derivative_valuation", err.derivative_valuation()}};
    if (err.scan().performed)
        j["shift_scan"] = {{"tested", err.scan().tested}, {"vanishing_mod_p2", err.scan().vanishing}};
    return j;
}

json to_json(const ConstructionReport& report) {
    json recs = json::array();
    for (const auto& r : report.records)
        recs.push_back({{"n", r.n},
                        {"p", big(r.p)},
                        {"k", r.k},
                        {"pinned", r.pinned},
                        {"base_c0", big(r.base_c0)},
                        {"residue", big(r.residue)},
                        {"modulus", big(r.modulus)},
                        {"lift_precision", r.lift_precision},
                        {"observed_valuation", r.observed_valuation},
                        {"verified", r.verified}});
    return {{"d", report.d}, {"c", big(report.c)}, {"verified", report.verified()}, {"records", recs}};
}

json to_json(const std::vector<VerifyRecord>& records) {
    json arr = json::array();
    for (const auto& r : records) {
        json e = {{"n", r.n},
                  {"p", big(r.p)},
                  {"k", r.k},
                  {"primitive", r.primitive},
                  {"valuation", r.valuation},
                  {"ok", r.ok}};
        if (r.valuation_at_least) e["valuation_at_least"] = true;
        if (!r.note.empty()) e["note"] = r.note;
        arr.push_back(std::move(e));
    }
    return arr;
}

json to_json(const PcfCensus& census, const ConditionStarStar& star_star) {
    json periodic = json::object(), preperiodic = json::object(), counts = json::object();
    for (std::uint64_t c = 0; c < census.entries.size(); ++c) {
        const auto& e = census.entries[c];
        (e.periodic() ? periodic : preperiodic)[std::to_string(c)] = to_json(e);
    }
    for (const auto& [n, k] : census.periodic_count) counts[std::to_string(n)] = k;
    return {{"p", std::to_string(census.p)},
            {"d", census.d},
            {"periodic", periodic},
            {"preperiodic", preperiodic},
            {"periodic_count", counts},
            {"condition_star_star", star_star.holds}};
}

json to_json(const ConditionStar& star) {
    return {{"n", star.n}, {"holds", star.holds}, {"checked", star.checked}, {"witnesses", star.witnesses}};
}

json to_json(const ConditionStarStar& star_star) {
    json per = json::array();
    for (const auto& s : star_star.per_period) per.push_back(to_json(s));
    return {{"holds", star_star.holds}, {"per_period", per}};
}

json to_json(const CorrespondenceReport& report) {
    json lifts = json::array(), counts = json::object();
    for (const auto& [n, k] : report.periodic_count) counts[std::to_string(n)] = k;
    for (const auto& l : report.lifts) {
        json e = {{"c", l.c}, {"n", l.n}, {"periodic_mod_pN", l.periodic_mod_pN}};
        if (l.lifted) e["lifted"] = big(*l.lifted);
        if (!l.error.empty()) e["error"] = l.error;
        lifts.push_back(std::move(e));
    }
    return {{"d", report.d},
            {"p", std::to_string(report.p)},
            {"N", report.precision},
            {"status", report.guaranteed ? "correspondence guaranteed" : "correspondence not guaranteed"},
            {"hypothesis", report.hypothesis},
            {"periodic_count", counts},
            {"preperiodic_count", report.preperiodic_count},
            {"lifts", lifts}};
}

json to_json(const EmpiricalDensity& density) {
    return {{"d", density.d},
            {"n", density.n},
            {"X", density.X},
            {"primes_scanned", density.primes_scanned},
            {"hits", density.hits},
            {"fraction", density.fraction()},
            {"skipped", density.skipped}};
}

json to_json(const RhoBound& bound) {
    return {{"bound", bound.value}, {"case", bound.case_id}, {"general_bound", bound.general}};
}

json to_json(const RhoCount& count) {
    json primes = json::array();
    for (const auto& p : count.primes) primes.push_back(big(p));
    return {{"rho", count.rho}, {"complete", count.complete}, {"primes", primes}};
}

json to_json(const MaximalityCertificate& cert) {
    json entries = json::array();
    for (const auto& e : cert.entries) {
        json j = {{"n", e.n}, {"found", e.found}, {"valid", e.valid()}};
        if (e.found) {
            j["p"] = big(e.p);
            j["v"] = e.v;
            j["checks"] = {{"primitive", e.primitive},
                           {"gcd_v_d_is_1", e.valuation_coprime},
                           {"p_not_dividing_d", e.p_coprime_to_d}};
            j["source"] = e.source;
        } else {
            j["note"] = "no witness found within budget";
        }
        entries.push_back(std::move(j));
    }
    json out = {{"d", cert.d},
                {"c", big(cert.c)},
                {"m", cert.m},
                {"entries", entries},
                {"complete", cert.complete()},
                {"assumptions", {"g o f^(n-1) irreducible for each n >= 2"}}};
    if (cert.minus_c_is_square) out["minus_c_is_square"] = *cert.minus_c_is_square;
    if (cert.claimed_order)
        out["claimed_order"] = {{"phi_d", big(cert.claimed_order->phi_d)},
                                {"base", big(cert.claimed_order->base)},
                                {"exponent", big(cert.claimed_order->exponent)},
                                {"form", "phi_d * base^exponent"}};
    else
        out["claimed_order"] = nullptr;
    return out;
}

namespace {

unsigned small_uint(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0)
        throw InvalidInput(std::string("spec field '") + key + "' must be a nonnegative integer");
    return j[key].get<unsigned>();
}

}  // namespace

DivisibilitySpec spec_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("spec must be a JSON object");
    DivisibilitySpec spec;
    spec.d = small_uint(j, "d");
    if (!j.contains("constraints") || !j["constraints"].is_array())
        throw InvalidInput("spec needs a 'constraints' array");
    for (const auto& group : j["constraints"]) {
        const std::uint64_t n = small_uint(group, "n");
        if (!group.contains("primes") || !group["primes"].is_array())
            throw InvalidInput("each constraint needs a 'primes' array");
        for (const auto& entry : group["primes"]) {
            PrimePowerConstraint c;
            c.n = n;
            c.k = small_uint(entry, "k");
            if (entry.contains("p")) c.p = big_from(entry["p"], "p");
            spec.constraints.push_back(std::move(c));
        }
    }
    if (j.contains("exclude_primes"))
        for (const auto& e : j["exclude_primes"]) spec.excluded_primes.insert(big_from(e, "exclude_primes entry"));
    return spec;
}

json spec_to_json(const DivisibilitySpec& spec) {
    json groups = json::array();
    for (const auto& c : spec.constraints) {
        json prime = {{"k", c.k}};
        if (c.p) prime["p"] = big(*c.p);
        if (!groups.empty() && groups.back()["n"] == c.n)
            groups.back()["primes"].push_back(prime);
        else
            groups.push_back({{"n", c.n}, {"primes", json::array({prime})}});
    }
    json excl = json::array();
    for (const auto& e : spec.excluded_primes) excl.push_back(big(e));
    return {{"d", spec.d}, {"constraints", groups}, {"exclude_primes", excl}};
}

MaximalityCertificate certificate_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("certificate must be a JSON object");
    MaximalityCertificate cert;
    cert.d = small_uint(j, "d");
    cert.c = big_from(j.at("c"), "c");
    cert.m = small_uint(j, "m");
    for (const auto& e : j.at("entries")) {
        CertificateEntry entry;
        entry.n = small_uint(e, "n");
        entry.found = e.value("found", false);
        if (entry.found) {
            entry.p = big_from(e.at("p"), "p");
            entry.v = e.at("v").get<std::uint64_t>();
            const auto& checks = e.at("checks");
            entry.primitive = checks.value("primitive", false);
            entry.valuation_coprime = checks.value("gcd_v_d_is_1", false);
            entry.p_coprime_to_d = checks.value("p_not_dividing_d", false);
            entry.source = e.value("source", "");
        }
        cert.entries.push_back(std::move(entry));
    }
    if (j.contains("minus_c_is_square")) cert.minus_c_is_square = j["minus_c_is_square"].get<bool>();
    return cert;
}

}  // namespace critorb::json_io
