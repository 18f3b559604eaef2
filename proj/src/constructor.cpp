#include "critorb/constructor.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "critorb/dynatomic.hpp"
#include "critorb/lifting.hpp"
#include "critorb/orbit.hpp"

namespace critorb {

namespace {

// Largest D_{d,n} for which G_{d,n} is built to test p | disc mod p.
constexpr std::uint64_t kDiscCheckDegree = 1u << 10;

bool gleason_small(unsigned d, std::uint64_t n) {
    return gleason_degree(d, n) <= static_cast<unsigned long>(kDiscCheckDegree);
}

// First return of 0 to itself under x^d + c mod p is exactly n.
bool exact_period_u64(unsigned d, std::uint64_t c, std::uint64_t n, std::uint64_t p) {
    std::uint64_t v = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        v = powmod_u64(v, d, p) + c;
        if (v >= p) v -= p;
        if (v == 0) return i == n;
    }
    return false;
}

// p | disc(G_{d,n}) when G is small enough to build; otherwise whether the
// chosen base is a multiple root (F'(c0) = 0 mod p).
bool disc_obstructed(unsigned d, std::uint64_t n, const BigInt& p, const BigInt& c0) {
    if (gleason_small(d, n) && p < BigInt(1) << 63) return p_divides_discriminant(gleason_poly(d, n), to_u64(p, "p"));
    return orbit_with_derivative(d, Residue(p, 1, c0), n).second.is_zero();
}

}  // namespace

bool ConstructionReport::verified() const {
    return std::all_of(records.begin(), records.end(), [](const ConstraintRecord& r) { return r.verified; });
}

std::optional<BigInt> find_base(unsigned d, std::uint64_t n, const BigInt& p) {
    require_degree(d);
    if (n == 0) throw InvalidInput("iterate index n must be >= 1");
    if (!is_prime(p)) throw InvalidInput("p = " + to_string(p) + " is not prime");
    const RootOptions roots;
    if (p < BigInt(static_cast<unsigned long>(roots.brute_force_limit))) {
        // Every c with 0 of exact period n mod p is a root of G_{d,n} mod p,
        // so scanning periods directly finds the same smallest root.
        const std::uint64_t pp = p.get_ui();
        for (std::uint64_t c = 0; c < pp; ++c)
            if (exact_period_u64(d, c, n, pp)) return BigInt(static_cast<unsigned long>(c));
        return std::nullopt;
    }
    const std::uint64_t pp = to_u64(p, "p");
    require_word_prime(pp);
    for (const auto& r : roots_mod_p(gleason_poly(d, n), pp, roots))
        if (exact_period_u64(d, r.root, n, pp)) return BigInt(static_cast<unsigned long>(r.root));
    return std::nullopt;
}

PrimeChoice find_prime_for_iterate(unsigned d, std::uint64_t n, const std::set<BigInt>& excluded,
                                   std::uint64_t ceiling) {
    require_degree(d);
    if (n == 0) throw InvalidInput("iterate index n must be >= 1");
    for (std::uint64_t p : primes_up_to(ceiling)) {
        const BigInt pp(static_cast<unsigned long>(p));
        if (d % p == 0 || excluded.count(pp)) continue;
        auto c0 = find_base(d, n, pp);
        if (!c0) continue;
        if (disc_obstructed(d, n, pp, *c0)) continue;
        return {pp, *c0};
    }
    throw SearchExhausted("no admissible prime for iterate " + std::to_string(n) + " found below " +
                          std::to_string(ceiling));
}

void validate_spec(const DivisibilitySpec& spec) {
    require_degree(spec.d);
    std::set<BigInt> seen;
    for (const auto& e : spec.excluded_primes)
        if (!is_prime(e)) throw InvalidInput("excluded entry " + to_string(e) + " is not prime");
    for (const auto& c : spec.constraints) {
        if (c.n == 0) throw InvalidInput("constraint iterate n must be >= 1");
        if (c.k == 0) throw InvalidInput("constraint exponent k must be >= 1");
        if (!c.p) continue;
        const BigInt& p = *c.p;
        if (!is_prime(p)) throw InvalidInput("constraint prime " + to_string(p) + " is not prime");
        if (spec.excluded_primes.count(p)) throw InvalidInput("constraint prime " + to_string(p) + " is excluded");
        if (!seen.insert(p).second) throw InvalidInput("constraint prime " + to_string(p) + " appears twice");
    }
}

ConstructionReport build_parameter(const DivisibilitySpec& spec, const ConstructorOptions& options) {
    validate_spec(spec);
    const unsigned d = spec.d;

    // Primes: pinned ones as given, the rest chosen in constraint order from
    // the smallest admissible primes not yet used.
    std::set<BigInt> used = spec.excluded_primes;
    for (const auto& c : spec.constraints)
        if (c.p) used.insert(*c.p);

    std::vector<ConstraintRecord> records;
    for (const auto& c : spec.constraints) {
        ConstraintRecord rec;
        rec.n = c.n;
        rec.k = c.k;
        rec.lift_precision = c.k + 2;
        if (c.p) {
            rec.pinned = true;
            rec.p = *c.p;
            auto base = find_base(d, c.n, rec.p);
            if (!base)
                throw NotAdmissible("prime " + to_string(rec.p) + " is not admissible for iterate " +
                                    std::to_string(c.n) + ": no parameter of exact period " + std::to_string(c.n));
            rec.base_c0 = *base;
            if (disc_obstructed(d, c.n, rec.p, rec.base_c0))
                throw DiscObstruction("disc obstruction: " + to_string(rec.p) + " divides disc(G_{" +
                                      std::to_string(d) + "," + std::to_string(c.n) + "})");
        } else {
            auto choice = find_prime_for_iterate(d, c.n, used, options.prime_ceiling);
            rec.p = choice.p;
            rec.base_c0 = choice.c0;
            used.insert(choice.p);
        }
        records.push_back(std::move(rec));
    }

    // Lifts are independent.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            try {
                auto& rec = records[i];
                const LiftResult lift = hensel_lift(d, rec.n, rec.p, rec.base_c0, rec.lift_precision);
                rec.modulus = critorb::pow(rec.p, rec.k + 1);
                rec.residue = mod_floor(adjust_power(lift, rec.k), rec.modulus);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, records.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<std::pair<BigInt, BigInt>> pairs;
    for (const auto& rec : records) pairs.emplace_back(rec.residue, rec.modulus);
    ConstructionReport report;
    report.d = d;
    report.c = pairs.empty() ? BigInt(0) : crt(pairs);

    DivisibilitySpec pinned = spec;
    for (std::size_t i = 0; i < records.size(); ++i) pinned.constraints[i].p = records[i].p;
    const auto checks = verify_spec(d, report.c, pinned);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].verified = checks[i].ok;
        records[i].observed_valuation = checks[i].valuation;
    }
    report.records = std::move(records);
    if (!report.verified())
        throw InconsistencyError("constructed c = " + to_string(report.c) + " failed a-posteriori verification");
    return report;
}

std::vector<VerifyRecord> verify_spec(unsigned d, const BigInt& c, const DivisibilitySpec& spec) {
    require_degree(d);
    std::vector<VerifyRecord> out;
    for (const auto& con : spec.constraints) {
        if (!con.p) throw InvalidInput("verification needs every constraint prime");
        VerifyRecord rec;
        rec.n = con.n;
        rec.p = *con.p;
        rec.k = con.k;
        try {
            const Primitivity pr = is_primitive_divisor(d, RationalParam(c), con.n, rec.p);
            rec.primitive = pr.primitive;
            rec.valuation = pr.valuation;
            if (!pr.primitive) {
                // Report the valuation anyway; a non-primitive p may still divide a_n.
                const Valuation v = iterate_valuation(d, c, con.n, rec.p);
                rec.valuation = v.value;
                rec.valuation_at_least = v.at_least;
                rec.note = "not primitive";
            }
        } catch (const ZeroIterate&) {
            rec.note = "zero iterate";
        } catch (const SearchExhausted&) {
            rec.valuation = kDefaultValuationCap;
            rec.valuation_at_least = true;
            rec.note = "valuation exceeds cap";
        }
        rec.ok = rec.primitive && !rec.valuation_at_least && rec.valuation == con.k;
        if (rec.primitive && !rec.ok && rec.note.empty()) rec.note = "valuation mismatch";
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace critorb
