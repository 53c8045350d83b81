#include "doctest.h"

#include <cmath>
#include <vector>

#include "iss/errors.hpp"
#include "iss/rng.hpp"
#include "iss/schemes_projective.hpp"

using namespace iss;

namespace {
const double kPi = std::acos(-1.0);

double vdot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
} // namespace

TEST_SUITE("projective") {

TEST_CASE("join of two points is incident to both") {
    ProjPoint p = make_point({1.0, 2.0, 3.0});
    ProjPoint q = make_point({-1.0, 0.5, 2.0});
    ProjLine l = join(p, q);
    CHECK(std::abs(vdot(p.v, l.n)) < 1e-12);
    CHECK(std::abs(vdot(q.v, l.n)) < 1e-12);
}

TEST_CASE("meet of two lines lies on both") {
    ProjLine a = make_line({0.3, -1.0, 0.7});
    ProjLine b = make_line({1.1, 0.2, -0.4});
    ProjPoint p = meet(a, b);
    CHECK(std::abs(vdot(p.v, a.n)) < 1e-12);
    CHECK(std::abs(vdot(p.v, b.n)) < 1e-12);
    CHECK(incident(p, a));
    CHECK(incident(p, b));
}

TEST_CASE("join rejects coincident points") {
    ProjPoint p = make_point({1.0, 2.0, 3.0});
    ProjPoint q = make_point({2.0, 4.0, 6.0}); // same projective point
    CHECK_THROWS_AS(join(p, q), CoincidentPoints);
}

TEST_CASE("dealt shares sit on their lines and on a common transversal") {
    ProjectiveScheme sch = make_projective_scheme({0.5, 1.1, kPi / 2});
    Stream rng(4, 0);
    for (int t = 0; t < 200; ++t) {
        Dealing d = proj_deal(sch, rng);
        std::vector<ProjPoint> pts;
        for (const auto& sh : d.shares) pts.push_back(make_point({sh[0], sh[1], sh[2]}));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(std::abs(vdot(pts[i].v, sch.participant_lines[i].n)) < 1e-9);
        }
        ProjLine t01 = join(pts[0], pts[1]);
        CHECK(std::abs(vdot(pts[2].v, t01.n)) < 1e-9);
    }
}

TEST_CASE("recovery returns the dealt secret") {
    ProjectiveScheme sch = make_projective_scheme({0.5, 1.1});
    Stream rng(4, 1);
    for (int t = 0; t < 200; ++t) {
        Dealing d = proj_deal(sch, rng);
        ProjPoint a = make_point({d.shares[0][0], d.shares[0][1], d.shares[0][2]});
        ProjPoint b = make_point({d.shares[1][0], d.shares[1][1], d.shares[1][2]});
        double rec = arc_parameter(sch, proj_recover(sch, a, b));
        double gap = std::fmod(std::abs(rec - d.secret), kPi);
        gap = std::min(gap, kPi - gap);
        CHECK(gap < 1e-9);
    }
}

TEST_CASE("arc parameter stays in the half-open arc") {
    ProjectiveScheme sch = make_projective_scheme({0.7});
    Stream rng(4, 2);
    for (int t = 0; t < 500; ++t) {
        Dealing d = proj_deal(sch, rng);
        CHECK(d.secret >= 0.0);
        CHECK(d.secret < kPi);
    }
}

TEST_CASE("scheme construction rejects the reserved angle") {
    CHECK_THROWS_AS(make_projective_scheme({0.0, 0.5}), BadParameter);
    CHECK_THROWS_AS(make_projective_scheme({0.5, 0.5}), BadParameter);
}

TEST_CASE("conditional density integrates to one") {
    ProjectiveScheme sch = make_projective_scheme({kPi / 2});
    ProjPoint share = make_point({std::cos(kPi / 4), 0.0, std::sin(kPi / 4)});
    Stream rng(4, 3);
    const int bins = 32;
    std::vector<double> f = proj_conditional_density(sch, 0, share, bins, 1000000, rng);
    REQUIRE(int(f.size()) == bins);
    double mass = 0.0;
    for (double v : f) mass += v * kPi / bins;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("conditional density matches the closed form") {
    // Distance d to the secret line turns the uniform arc law into
    //   f_d(theta) = sin d / (pi (sin^2 d + cos^2 d sin^2 theta))
    // with theta measured from the share's nearest point of the line.
    const double dist = kPi / 4;
    ProjectiveScheme sch = make_projective_scheme({kPi / 2});
    ProjPoint share = make_point({std::cos(dist), 0.0, std::sin(dist)});
    Stream rng(4, 4);
    const int bins = 18;
    std::vector<double> f = proj_conditional_density(sch, 0, share, bins, 1000000, rng);
    double sd = std::sin(dist), cd = std::cos(dist);
    for (int i = 0; i < bins; ++i) {
        double theta = (i + 0.5) * kPi / bins;
        double s = std::sin(theta);
        double exact = sd / (kPi * (sd * sd + cd * cd * s * s));
        CHECK(f[std::size_t(i)] == doctest::Approx(exact).epsilon(0.08));
    }
}

}
