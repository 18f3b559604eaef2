#include <doctest.h>

#include <fstream>

#include "critorb/constructor.hpp"
#include "critorb/dynatomic.hpp"
#include "critorb/error.hpp"
#include "critorb/json_io.hpp"
#include "critorb/orbit.hpp"

using namespace critorb;

namespace {

DivisibilitySpec load(const std::string& name) {
    std::ifstream in(std::string(CRITORB_TEST_DATA) + "/" + name);
    REQUIRE(in.good());
    return json_io::spec_from_json(nlohmann::json::parse(in));
}

bool all_ok(const std::vector<VerifyRecord>& recs) {
    for (const auto& r : recs)
        if (!r.ok) return false;
    return !recs.empty();
}

}  // namespace

TEST_CASE("find_base") {
    CHECK(find_base(2, 3, BigInt(5)) == BigInt(1));
    CHECK(find_base(2, 3, BigInt(7)) == BigInt(3));
    CHECK_FALSE(find_base(2, 3, BigInt(13)).has_value());
    // above the scan limit the roots of G_{2,4} are used
    const IntPoly g = gleason_poly(2, 4);
    int found = 0;
    for (std::uint64_t p = 1000003; found < 3; p = to_u64(next_prime(p), "p")) {
        const auto b = find_base(2, 4, BigInt(static_cast<unsigned long>(p)));
        CHECK(b.has_value() == has_root_mod_p(g, p));
        if (!b) continue;
        ++found;
        CHECK(period_type_mod(2, Residue(BigInt(static_cast<unsigned long>(p)), 1, *b)).type == PeriodType{0, 4});
    }
}

TEST_CASE("find_prime_for_iterate skips p | d") {
    const PrimeChoice one = find_prime_for_iterate(2, 1, {});
    CHECK(one.p == 3);
    CHECK(one.c0 == 0);
    const PrimeChoice three = find_prime_for_iterate(2, 3, {BigInt(5)});
    CHECK(three.p == 7);
    CHECK(three.c0 == 3);
    CHECK_THROWS_AS(find_prime_for_iterate(2, 3, {}, 4), SearchExhausted);
}

TEST_CASE("published constant satisfies the six constraints") {
    const DivisibilitySpec spec = load("six_constraints.json");
    const auto recs = verify_spec(2, BigInt("24351981847787737533052341852056330671894786203451391"), spec);
    REQUIRE(recs.size() == 6);
    for (const auto& r : recs) {
        CHECK(r.ok);
        CHECK(r.valuation == r.k);
    }
    // perturbing c by 1 breaks the 2-adic constraint
    const auto bad = verify_spec(2, BigInt("24351981847787737533052341852056330671894786203451392"), spec);
    CHECK_FALSE(all_ok(bad));
}

TEST_CASE("build_parameter on the six constraints") {
    const DivisibilitySpec spec = load("six_constraints.json");
    const ConstructionReport report = build_parameter(spec, {1'000'000, 4});
    CHECK(report.verified());
    CHECK(all_ok(verify_spec(2, report.c, spec)));
    BigInt modulus = 1;
    for (const auto& r : report.records) modulus *= r.modulus;
    CHECK(report.c >= 0);
    CHECK(report.c < modulus);
}

TEST_CASE("automatic prime selection honours exclusions") {
    DivisibilitySpec spec;
    spec.d = 3;
    spec.constraints = {{1, std::nullopt, 2}, {2, std::nullopt, 3}, {3, std::nullopt, 1}};
    spec.excluded_primes = {BigInt(5)};
    const ConstructionReport report = build_parameter(spec);
    CHECK(report.verified());
    for (const auto& r : report.records) {
        CHECK(r.p != 5);
        CHECK(r.p != 3);
        CHECK_FALSE(r.pinned);
    }
}

TEST_CASE("inadmissible specs") {
    DivisibilitySpec spec;
    spec.d = 2;
    spec.constraints = {{3, BigInt(13), 1}};
    CHECK_THROWS_AS(build_parameter(spec), NotAdmissible);
    spec.constraints = {{3, BigInt(23), 1}};
    CHECK_THROWS_AS(build_parameter(spec), DiscObstruction);
    spec.constraints = {{2, BigInt(3), 0}};
    CHECK_THROWS_AS(validate_spec(spec), InvalidInput);
    spec.constraints = {{2, BigInt(9), 1}};
    CHECK_THROWS_AS(validate_spec(spec), InvalidInput);
    spec.constraints = {{2, BigInt(3), 1}, {3, BigInt(3), 1}};
    CHECK_THROWS_AS(validate_spec(spec), InvalidInput);
    spec.constraints = {{2, BigInt(3), 1}};
    spec.excluded_primes = {BigInt(3)};
    CHECK_THROWS_AS(validate_spec(spec), InvalidInput);
}

TEST_CASE("spec JSON round trip") {
    const DivisibilitySpec spec = load("six_constraints.json");
    const DivisibilitySpec back = json_io::spec_from_json(json_io::spec_to_json(spec));
    REQUIRE(back.constraints.size() == spec.constraints.size());
    for (std::size_t i = 0; i < spec.constraints.size(); ++i) {
        CHECK(back.constraints[i].n == spec.constraints[i].n);
        CHECK(back.constraints[i].p == spec.constraints[i].p);
        CHECK(back.constraints[i].k == spec.constraints[i].k);
    }
}
