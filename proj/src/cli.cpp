#include "critorb/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "critorb/error.hpp"
#include "critorb/json_io.hpp"

namespace critorb::cli {

namespace {

using json = nlohmann::json;
using namespace critorb::json_io;

struct Options {
    unsigned d = 2;
    std::uint64_t n = 1;
    std::uint64_t m = 1;
    std::string p;
    unsigned t = 1;
    std::string c;
    std::string c0;
    unsigned precision = 0;
    unsigned r = 1;
    std::string spec;
    std::string certificate;
    std::string coeffs;
    std::uint64_t limit = 0;
    std::uint64_t budget = 0;
    std::uint64_t max_period = 0;
    std::uint64_t cap = kDefaultValuationCap;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    bool iterate = false;
    bool csv = false;
    bool json_out = true;
    bool meta = false;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput("malformed JSON in " + path + ": " + e.what());
    }
}

std::uint64_t word_prime(const std::string& text) {
    const BigInt p = parse_bigint(text);
    const std::uint64_t w = to_u64(p, "p");
    require_word_prime(w);
    return w;
}

BigInt prime_arg(const std::string& text) {
    const BigInt p = parse_bigint(text);
    if (!is_prime(p)) throw InvalidInput("p = " + text + " is not prime");
    return p;
}

IntPoly poly_arg(const Options& o) {
    if (!o.coeffs.empty()) {
        std::vector<BigInt> cs;
        std::stringstream ss(o.coeffs);
        std::string item;
        while (std::getline(ss, item, ',')) cs.push_back(parse_bigint(item));
        return IntPoly(std::move(cs));
    }
    return o.iterate ? iterate_poly(o.d, o.n) : gleason_poly(o.d, o.n);
}

Status ok_if(bool good) { return good ? Status::Ok : Status::VerificationFailed; }

using Handler = std::function<CommandResult(const Options&)>;

CommandResult cmd_orbit(const Options& o) {
    const Residue c(prime_arg(o.p), o.t, RationalParam::parse(o.c).num());
    if (!RationalParam::parse(o.c).is_integer()) throw InvalidInput("orbit needs an integer c");
    const auto r = period_type_mod(o.d, c);
    json out = {{"d", o.d}, {"c", big(c.value())}, {"p", o.p}, {"t", o.t}, {"tail", r.type.tail},
                {"period", r.type.period}, {"cycle_entry", big(r.cycle_entry)}};
    return {Status::Ok, out, {}, {}};
}

CommandResult cmd_valuation(const Options& o) {
    const Valuation v = iterate_valuation(o.d, parse_bigint(o.c), o.n, prime_arg(o.p), o.cap);
    return {Status::Ok, {{"valuation", v.value}, {"at_least", v.at_least}}, {}, {}};
}

CommandResult cmd_primitive(const Options& o) {
    const Primitivity pr = is_primitive_divisor(o.d, RationalParam::parse(o.c), o.n, prime_arg(o.p), o.cap);
    return {Status::Ok, {{"primitive", pr.primitive}, {"valuation", pr.valuation}}, {}, {}};
}

CommandResult cmd_gleason(const Options& o) {
    const IntPoly f = o.iterate ? iterate_poly(o.d, o.n) : gleason_poly(o.d, o.n);
    return {Status::Ok,
            {{"d", o.d}, {"n", o.n}, {"degree", f.degree()}, {"coefficients", to_json(f)}, {"text", f.str()}},
            {},
            {}};
}

CommandResult cmd_disc(const Options& o) {
    const IntPoly f = poly_arg(o);
    return {Status::Ok, {{"degree", f.degree()}, {"discriminant", big(discriminant(f))}}, {}, {}};
}

CommandResult cmd_roots(const Options& o) {
    const IntPoly f = poly_arg(o);
    const std::uint64_t p = word_prime(o.p);
    RootOptions ro;
    ro.seed = o.seed;
    if (o.limit) ro.brute_force_limit = o.limit;
    const auto roots = roots_mod_p(f, p, ro);
    return {Status::Ok, {{"p", o.p}, {"has_root", !roots.empty()}, {"roots", to_json(roots)}}, {}, {}};
}

CommandResult cmd_lift(const Options& o) {
    const unsigned N = o.precision ? o.precision : 1;
    try {
        return {Status::Ok, to_json(hensel_lift(o.d, o.n, prime_arg(o.p), parse_bigint(o.c0), N)), {}, {}};
    } catch (const HenselHypothesisFails& e) {
        return {Status::InvalidInput, to_json(e), {}, {}};
    }
}

CommandResult cmd_adjust(const Options& o) {
    const unsigned N = o.precision ? o.precision : o.r + 2;
    const LiftResult lift = hensel_lift(o.d, o.n, prime_arg(o.p), parse_bigint(o.c0), N);
    const BigInt cr = adjust_power(lift, o.r);
    return {Status::Ok, {{"c", big(cr)}, {"r", o.r}, {"lift", to_json(lift)}}, {}, {}};
}

CommandResult cmd_construct(const Options& o) {
    const DivisibilitySpec spec = spec_from_json(read_json_file(o.spec));
    ConstructorOptions co;
    co.threads = o.threads;
    if (o.limit) co.prime_ceiling = o.limit;
    const ConstructionReport report = build_parameter(spec, co);
    return {ok_if(report.verified()), to_json(report), {}, {}};
}

CommandResult cmd_verify(const Options& o) {
    if (!o.certificate.empty()) {
        const MaximalityCertificate cert = certificate_from_json(read_json_file(o.certificate));
        const auto agree = recheck_certificate(cert);
        const bool all = std::all_of(agree.begin(), agree.end(), [](bool b) { return b; });
        return {ok_if(all && cert.complete()),
                {{"entries_reproduced", agree}, {"complete", cert.complete()}},
                {},
                {}};
    }
    if (o.spec.empty()) throw InvalidInput("verify needs --spec or --certificate");
    const DivisibilitySpec spec = spec_from_json(read_json_file(o.spec));
    const BigInt c = parse_bigint(o.c);
    const auto records = verify_spec(spec.d, c, spec);
    const bool all = std::all_of(records.begin(), records.end(), [](const VerifyRecord& r) { return r.ok; });
    return {ok_if(all), {{"d", spec.d}, {"c", big(c)}, {"ok", all}, {"records", to_json(records)}}, {}, {}};
}

CommandResult cmd_pcf(const Options& o) {
    const std::uint64_t p = word_prime(o.p);
    const PcfCensus census = enumerate_pcf(o.d, p, o.threads);
    ConditionStarStar ss;
    for (const auto& [n, k] : census.periodic_count) {
        ss.per_period.push_back(check_condition_star(census, n));
        if (!ss.per_period.back().holds) ss.holds = false;
    }
    return {Status::Ok, to_json(census, ss), {}, {}};
}

CommandResult cmd_condition(const Options& o) {
    const std::uint64_t p = word_prime(o.p);
    json out;
    if (o.iterate) {
        out = to_json(check_condition_star(o.d, p, o.n));
    } else {
        std::optional<std::uint64_t> maxp;
        if (o.max_period) maxp = o.max_period;
        out = to_json(check_condition_star_star(o.d, p, maxp));
    }
    return {Status::Ok, out, {}, {}};
}

CommandResult cmd_correspond(const Options& o) {
    const unsigned N = o.precision ? o.precision : 2;
    return {Status::Ok, to_json(correspondence_report(o.d, word_prime(o.p), N)), {}, {}};
}

CommandResult cmd_density(const Options& o) {
    const std::uint64_t X = o.limit ? o.limit : 10'000;
    DensityOptions dopt;
    dopt.threads = o.threads;
    dopt.collect_rows = o.csv;
    const EmpiricalDensity emp = empirical_density(o.d, o.n, X, dopt);
    if (o.csv) {
        std::ostringstream out;
        out << "p,has_root\n";
        for (const auto& [p, root] : emp.rows) out << p << "," << (root ? 1 : 0) << "\n";
        return {Status::Ok, nullptr, out.str(), {}};
    }
    const BigInt D = gleason_degree(o.d, o.n);
    json out = {{"d", o.d}, {"n", o.n}, {"D", big(D)}, {"empirical", to_json(emp)}};
    if (D <= static_cast<unsigned long>(kMaxFactorialArgument)) {
        out["conditional_density"] = rational(fpp_symmetric(D.get_ui()));
        out["conditional_density_note"] = "valid only under symmetric Galois group";
        out["lower_bound"] = rational(density_lower_bound(o.d, o.n));
        if (o.d == 2 && o.n >= 2 && o.n < 20) out["error_bound_vs_limit"] = rational(limit_error_bound(o.n).sharp);
    }
    return {Status::Ok, out, {}, {}};
}

CommandResult cmd_bound(const Options& o) {
    return {Status::Ok, to_json(rho_upper_bound(o.d, o.n, RationalParam::parse(o.c))), {}, {}};
}

CommandResult cmd_rho(const Options& o) {
    FactorBudget budget;
    budget.seed = o.seed;
    if (o.budget) budget.rho_iterations = o.budget;
    return {Status::Ok, to_json(count_primitive_primes(o.d, RationalParam::parse(o.c), o.n, budget)), {}, {}};
}

CommandResult cmd_certify(const Options& o) {
    CertificateOptions co;
    co.budget.seed = o.seed;
    if (o.limit) co.scan_primes = o.limit;
    if (o.budget) co.budget.rho_iterations = o.budget;
    const MaximalityCertificate cert = maximality_certificate(o.d, parse_bigint(o.c), o.m, co);
    return {ok_if(cert.complete()), to_json(cert), {}, {}};
}

CommandResult failure(Status s, const std::string& kind, const std::string& message) {
    return {s, {{"error", message}, {"kind", kind}}, {}, {}};
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"critical orbits of x^d + c: periods, lifts, constructions, densities"};
    app.require_subcommand(1);
    app.add_option("--seed", o.seed, "seed for randomized internals");
    app.add_option("--threads", o.threads, "worker threads");
    app.add_flag("--meta", o.meta, "emit a metadata line on stderr");

    std::map<std::string, Handler> handlers;
    auto sub = [&](const std::string& name, const std::string& help, Handler h) {
        handlers[name] = std::move(h);
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--d", o.d, "degree d >= 2");
        s->add_flag("--json", o.json_out, "JSON output (default)");
        return s;
    };

    auto* orbit = sub("orbit", "period type of 0 in Z/p^t", cmd_orbit);
    orbit->add_option("--c", o.c)->required();
    orbit->add_option("--p", o.p)->required();
    orbit->add_option("--t", o.t);

    auto* val = sub("valuation", "nu_p(f^n(0))", cmd_valuation);
    val->add_option("--c", o.c)->required();
    val->add_option("--n", o.n)->required();
    val->add_option("--p", o.p)->required();
    val->add_option("--cap", o.cap);

    auto* prim = sub("primitive", "is p a primitive divisor of a_n", cmd_primitive);
    prim->add_option("--c", o.c, "integer or a/b")->required();
    prim->add_option("--n", o.n)->required();
    prim->add_option("--p", o.p)->required();
    prim->add_option("--cap", o.cap);

    auto* gle = sub("gleason", "G_{d,n}(c) coefficients", cmd_gleason);
    gle->add_option("--n", o.n)->required();
    gle->add_flag("--iterate", o.iterate, "f^n(0) instead of G_{d,n}");

    auto* disc = sub("disc", "discriminant of G_{d,n} or of --coeffs", cmd_disc);
    disc->add_option("--n", o.n);
    disc->add_option("--coeffs", o.coeffs, "comma-separated, constant term first");
    disc->add_flag("--iterate", o.iterate);

    auto* roots = sub("roots", "roots mod p with multiplicity", cmd_roots);
    roots->add_option("--n", o.n);
    roots->add_option("--p", o.p)->required();
    roots->add_option("--coeffs", o.coeffs);
    roots->add_option("--limit", o.limit, "brute-force limit");
    roots->add_flag("--iterate", o.iterate);

    auto* lift = sub("lift", "Newton lift of c0 to precision N", cmd_lift);
    lift->add_option("--n", o.n)->required();
    lift->add_option("--p", o.p)->required();
    lift->add_option("--c0", o.c0)->required();
    lift->add_option("--precision", o.precision);

    auto* adj = sub("adjust", "parameter with nu_p(f^n(0)) = r", cmd_adjust);
    adj->add_option("--n", o.n)->required();
    adj->add_option("--p", o.p)->required();
    adj->add_option("--c0", o.c0)->required();
    adj->add_option("--r", o.r)->required();
    adj->add_option("--precision", o.precision);

    auto* con = sub("construct", "build c realizing a divisibility spec", cmd_construct);
    con->add_option("--spec", o.spec)->required();
    con->add_option("--limit", o.limit, "prime search ceiling");

    auto* ver = sub("verify", "check (c, spec) or a certificate", cmd_verify);
    ver->add_option("--c", o.c);
    ver->add_option("--spec", o.spec);
    ver->add_option("--certificate", o.certificate);

    auto* pcf = sub("pcf", "census of period types over F_p", cmd_pcf);
    pcf->add_option("--p", o.p)->required();

    auto* cond = sub("condition", "condition (**), or (*) with --n", cmd_condition);
    cond->add_option("--p", o.p)->required();
    auto* cond_n = cond->add_option("--n", o.n);
    cond->add_option("--max-period", o.max_period);

    auto* cor = sub("correspond", "lift every F_p periodic parameter", cmd_correspond);
    cor->add_option("--p", o.p)->required();
    cor->add_option("--precision", o.precision);

    auto* den = sub("density", "primes p <= X with a root of G_{d,n}", cmd_density);
    den->add_option("--n", o.n)->required();
    den->add_option("--limit", o.limit, "X");
    den->add_flag("--csv", o.csv);

    auto* bnd = sub("bound", "upper bound on rho_d(n,c)", cmd_bound);
    bnd->add_option("--n", o.n)->required();
    bnd->add_option("--c", o.c)->required();

    auto* rho = sub("rho", "count primitive prime divisors of a_n", cmd_rho);
    rho->add_option("--n", o.n)->required();
    rho->add_option("--c", o.c)->required();
    rho->add_option("--budget", o.budget, "Pollard rho iterations");

    auto* cert = sub("certify", "maximality certificate for iterates 1..m", cmd_certify);
    cert->add_option("--c", o.c)->required();
    cert->add_option("--m", o.m)->required();
    cert->add_option("--limit", o.limit, "primes scanned per certificate");
    cert->add_option("--budget", o.budget, "Pollard rho iterations");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {Status::Ok, nullptr, app.help(), {}};
    } catch (const CLI::ParseError& e) {
        return failure(Status::InvalidInput, "usage", e.what());
    }

    const auto parsed = app.get_subcommands();
    const std::string name = parsed.front()->get_name();
    if (name == "condition") o.iterate = cond_n->count() > 0;

    CommandResult result;
    try {
        result = handlers.at(name)(o);
    } catch (const SizeGuardExceeded& e) {
        result = failure(Status::InvalidInput, "size_guard", e.what());
    } catch (const ZeroIterate& e) {
        result = failure(Status::InvalidInput, "zero_iterate", e.what());
    } catch (const InvalidInput& e) {
        result = failure(Status::InvalidInput, "invalid_input", e.what());
    } catch (const SearchExhausted& e) {
        result = failure(Status::Exhausted, "exhausted", e.what());
    } catch (const InconsistencyError& e) {
        result = failure(Status::VerificationFailed, "inconsistency", e.what());
    }
    if (o.meta) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        result.meta = json{{"command", name},
                           {"unix_time", std::chrono::duration_cast<std::chrono::seconds>(now).count()},
                           {"seed", o.seed},
                           {"threads", o.threads}}
                          .dump();
    }
    return result;
}

}  // namespace critorb::cli
