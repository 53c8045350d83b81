#include "doctest.h"

#include <cmath>
#include <vector>

#include "iss/errors.hpp"
#include "iss/oracle.hpp"
#include "iss/rng.hpp"
#include "iss/schemes_stat.hpp"

using namespace iss;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_SUITE("stat") {

TEST_CASE("noisy deal hands one component per participant") {
    NoisyScheme sch = make_noisy(7);
    Stream rng(30, 0);
    Dealing d = noisy_deal(sch, rng);
    REQUIRE(d.shares.size() == 7);
    for (const auto& sh : d.shares) CHECK(sh.size() == 1);
}

TEST_CASE("closed-form conditional variance spot values") {
    CHECK(stat2_variance({1.0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(stat2_variance({1.0, 1.0}) == doctest::Approx(3.0 / 5.0).epsilon(1e-15));
    CHECK(stat2_variance({2.0, 2.0, 2.0}) == doctest::Approx(13.0 / 16.0).epsilon(1e-15));
}

TEST_CASE("closed form agrees with the extended-precision oracle") {
    std::vector<std::vector<double>> cases{
        {1.5, 2.5, 3.5},
        {9.9, 1.0},
        {4.0, 4.0, 4.0, 4.0, 7.0},
    };
    for (const auto& r : cases) {
        CHECK(stat2_variance(r) == doctest::Approx(oracle::stat2_variance(r)).epsilon(1e-12));
    }
}

TEST_CASE("obfuscating values are validated") {
    CHECK_THROWS_AS(make_obfuscated({}), BadParameter);
    CHECK_THROWS_AS(make_obfuscated({0.5}), BadParameter);
    CHECK_THROWS_AS(make_obfuscated({10.0}), BadParameter);
    ObfuscatedScheme sch = make_obfuscated({1.0, 9.999});
    CHECK(sch.r_values.size() == 2);
}

TEST_CASE("strip construction is validated") {
    CHECK_THROWS_AS(make_strip(5.0, 6.0), BadParameter);
    CHECK_THROWS_AS(make_strip(400.0, 5.0), BadParameter);
}

TEST_CASE("strip membership means closeness to the ray") {
    StripScheme sch = make_strip(50.0, 6.0);
    double angle = kPi / 5;
    double sn = std::sin(angle), cs = std::cos(angle);
    std::vector<StripPoint> members = strip_members(sch, angle, sch.d);
    CHECK(members.size() > 10);
    for (const auto& p : members) {
        CHECK(std::abs(p.x * sn - p.y * cs) <= sch.d / 2 + 1e-12);
        CHECK(p.dist <= sch.R);
        CHECK(p.x >= 1);
        CHECK(p.y >= 1);
        CHECK(p.r == doctest::Approx(1.0 + p.phi).epsilon(1e-12));
    }
}

TEST_CASE("strip members come sorted by distance") {
    StripScheme sch = make_strip(60.0, 6.0);
    std::vector<StripPoint> members = strip_members(sch, kPi / 3, sch.d);
    for (std::size_t i = 1; i < members.size(); ++i) {
        CHECK(members[i - 1].dist <= members[i].dist + 1e-12);
    }
}

TEST_CASE("direction angle must avoid the axes") {
    StripScheme sch = make_strip(50.0, 6.0);
    CHECK_THROWS_AS(strip_members(sch, 0.0, sch.d), BadParameter);
    CHECK_THROWS_AS(strip_members(sch, kPi / 2, sch.d), BadParameter);
}

TEST_CASE("qualification scan needs a nonempty subset") {
    StripScheme sch = make_strip(50.0, 6.0);
    CHECK_THROWS_AS(strip_qualification(sch, {}), EmptySubset);
}

TEST_CASE("tiny subsets come back inconclusive") {
    StripScheme sch = make_strip(50.0, 6.0);
    std::vector<StripPoint> members = strip_members(sch, kPi / 5, sch.d);
    members.resize(4);
    StripQualification q = strip_qualification(sch, members);
    CHECK(q.verdict == StripVerdict::Inconclusive);
    CHECK(q.trace.size() == 4);
}

TEST_CASE("deviation sum is the squared distance to the direction value") {
    std::vector<StripPoint> pts(2);
    pts[0].r = 1.5;
    pts[1].r = 2.0;
    double angle = 0.75;
    double expected = (1.5 - 1.75) * (1.5 - 1.75) + (2.0 - 1.75) * (2.0 - 1.75);
    CHECK(strip_deviation_sum(pts, angle) == doctest::Approx(expected).epsilon(1e-12));
}

}
