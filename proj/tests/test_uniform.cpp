#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "iss/access.hpp"
#include "iss/errors.hpp"
#include "iss/numerics.hpp"
#include "iss/rng.hpp"
#include "iss/schemes_uniform.hpp"

using namespace iss;

TEST_SUITE("uniform") {

TEST_CASE("modsum recovery inverts the deal") {
    ModSumScheme sch{4};
    Stream rng(5, 0);
    for (int t = 0; t < 50; ++t) {
        Dealing d = modsum_deal(sch, rng);
        CHECK(d.shares.size() == 4);
        std::vector<double> all;
        double sum = 0.0;
        for (const auto& sh : d.shares) {
            all.push_back(sh.at(0));
            sum += sh.at(0);
        }
        CHECK(modsum_recover(sch, all) == doctest::Approx(d.secret).epsilon(1e-12));
        CHECK(mod1(sum) == doctest::Approx(d.secret).epsilon(1e-12));
    }
}

TEST_CASE("modsum rejects the wrong share count") {
    ModSumScheme sch{3};
    CHECK_THROWS_AS(modsum_recover(sch, {0.1, 0.2}), WrongShareCount);
}

TEST_CASE("composite share widths follow base membership") {
    CompositeScheme sch{AccessStructure::from_base(3, {{0, 1}, {1, 2}})};
    Stream rng(6, 0);
    Dealing d = composite_deal(sch, rng);
    CHECK(d.shares[0].size() == 1);
    CHECK(d.shares[1].size() == 2);
    CHECK(d.shares[2].size() == 1);
}

TEST_CASE("composite recovers through every base element") {
    CompositeScheme sch{AccessStructure::from_base(3, {{0, 1}, {1, 2}})};
    Stream rng(6, 0);
    for (int t = 0; t < 50; ++t) {
        Dealing d = composite_deal(sch, rng);
        std::vector<std::vector<double>> by_index(3);
        for (int p = 0; p < 3; ++p) by_index[std::size_t(p)] = d.shares[std::size_t(p)];
        CHECK(composite_recover(sch, {0, 1}, by_index) ==
              doctest::Approx(d.secret).epsilon(1e-12));
        CHECK(composite_recover(sch, {1, 2}, by_index) ==
              doctest::Approx(d.secret).epsilon(1e-12));
        CHECK(composite_recover(sch, {0, 1, 2}, by_index) ==
              doctest::Approx(d.secret).epsilon(1e-12));
    }
}

TEST_CASE("composite rejects unqualified subsets") {
    CompositeScheme sch{AccessStructure::from_base(3, {{0, 1}, {1, 2}})};
    Stream rng(6, 0);
    Dealing d = composite_deal(sch, rng);
    std::vector<std::vector<double>> by_index(3);
    for (int p = 0; p < 3; ++p) by_index[std::size_t(p)] = d.shares[std::size_t(p)];
    CHECK_THROWS_AS(composite_recover(sch, {0, 2}, by_index), NotQualified);
}

TEST_CASE("slope recovery from any label pair") {
    SlopeScheme sch{{0.2, 0.5, 0.9}};
    Stream rng(7, 0);
    for (int t = 0; t < 50; ++t) {
        Dealing d = slope_deal(sch, rng);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                if (i == j) continue;
                double rec = slope_recover(sch, {sch.labels[i], d.shares[i][0]},
                                           {sch.labels[j], d.shares[j][0]});
                CHECK(rec == doctest::Approx(d.secret).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("slope rejects a degenerate pair") {
    SlopeScheme sch{{0.2, 0.5}};
    CHECK_THROWS_AS(slope_recover(sch, {0.2, 0.3}, {0.2, 0.4}), DegeneratePair);
}

TEST_CASE("ramp recovery and truncation gap") {
    DyadicRampScheme sch{10};
    Stream rng(8, 0);
    Dealing d = ramp_deal(sch, rng);
    CHECK(d.shares.size() == 10);
    CHECK(d.truncation_gap == doctest::Approx(std::ldexp(1.0, -10)));
    std::vector<double> all;
    for (const auto& sh : d.shares) all.push_back(sh.at(0));
    CHECK(ramp_recover(sch, all) == doctest::Approx(d.secret).epsilon(1e-12));
}

TEST_CASE("ramp interval pins the secret to the advertised width") {
    DyadicRampScheme sch{10};
    Stream rng(9, 0);
    for (int t = 0; t < 50; ++t) {
        Dealing d = ramp_deal(sch, rng);
        std::vector<double> all;
        for (const auto& sh : d.shares) all.push_back(sh.at(0));
        for (int missing : {0, 3, 9}) {
            auto [lo, hi] = ramp_interval(sch, all, missing);
            CHECK(hi - lo == doctest::Approx(std::ldexp(1.0, -(missing + 1))).epsilon(1e-12));
            CHECK(d.secret >= lo - 1e-12);
            CHECK(d.secret <= hi + 1e-12);
        }
    }
}

}
