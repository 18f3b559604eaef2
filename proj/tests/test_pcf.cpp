#include <doctest.h>

#include "critorb/error.hpp"
#include "critorb/orbit.hpp"
#include "critorb/pcf.hpp"

using namespace critorb;

TEST_CASE("census d=3 p=5") {
    const PcfCensus census = enumerate_pcf(3, 5);
    const std::vector<PeriodType> expect{{0, 1}, {0, 4}, {0, 2}, {0, 2}, {0, 4}};
    CHECK(census.entries == expect);
    CHECK(census.preperiodic_count == 0);
    CHECK(census.periodic_with_period(4) == std::vector<std::uint64_t>{1, 4});
    CHECK(census.periodic_with_period(2) == std::vector<std::uint64_t>{2, 3});
}

TEST_CASE("census d=2 frozen tables") {
    CHECK(enumerate_pcf(2, 2).entries == std::vector<PeriodType>{{0, 1}, {0, 2}});
    CHECK(enumerate_pcf(2, 3).entries == std::vector<PeriodType>{{0, 1}, {2, 1}, {0, 2}});
    const std::vector<PeriodType> p7{{0, 1}, {3, 1}, {4, 1}, {0, 3}, {3, 2}, {2, 1}, {0, 2}};
    CHECK(enumerate_pcf(2, 7).entries == p7);
    CHECK(enumerate_pcf(2, 7, 3).entries == p7);
}

TEST_CASE("census counts add up") {
    for (std::uint64_t p : {11ull, 101ull, 1009ull}) {
        const PcfCensus c = enumerate_pcf(2, p, 2);
        std::uint64_t total = c.preperiodic_count;
        for (const auto& [n, k] : c.periodic_count) total += k;
        CHECK(total == p);
    }
}

TEST_CASE("condition (*)") {
    // G_{2,3} has a double root at 15 mod 23
    const ConditionStar s = check_condition_star(2, 23, 3);
    CHECK_FALSE(s.holds);
    CHECK(s.witnesses == std::vector<std::uint64_t>{15});
    CHECK(check_condition_star(2, 7, 3).holds);
    CHECK(check_condition_star(2, 13, 3).checked.empty());
    CHECK_THROWS_AS(check_condition_star(2, 7, 8), InvalidInput);
}

TEST_CASE("condition (**)") {
    CHECK(check_condition_star_star(2, 7).holds);
    CHECK_FALSE(check_condition_star_star(2, 13).holds);
    CHECK_FALSE(check_condition_star_star(2, 23).holds);
    CHECK(check_condition_star_star(3, 5).holds);
}

TEST_CASE("correspondence") {
    const CorrespondenceReport r = correspondence_report(3, 5, 4);
    CHECK(r.guaranteed);
    REQUIRE(r.lifts.size() == 5);
    for (const auto& l : r.lifts) {
        CHECK(l.periodic_mod_pN);
        REQUIRE(l.lifted.has_value());
        CHECK(period_type_mod(3, Residue(BigInt(5), 4, *l.lifted)).type == PeriodType{0, l.n});
    }
    CHECK_FALSE(correspondence_report(3, 3, 2).guaranteed);
    CHECK_FALSE(correspondence_report(2, 13, 2).guaranteed);
}
