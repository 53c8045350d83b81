#include "doctest.h"

#include <cmath>
#include <vector>

#include "iss/errors.hpp"
#include "iss/numerics.hpp"

using namespace iss;

TEST_SUITE("numerics") {

TEST_CASE("wrapped normal frozen values") {
    // Independently computed from the theta series at sigma = 0.5.
    CHECK(wrapped_normal_density(0.0, 0.5) == doctest::Approx(1.0143837721).epsilon(1e-9));
    CHECK(wrapped_normal_density(0.5, 0.5) == doctest::Approx(0.9856162386).epsilon(1e-9));
}

TEST_CASE("wrapped normal is periodic and positive") {
    for (double sigma : {0.2, 0.7, 2.0}) {
        for (int i = 0; i < 10; ++i) {
            double x = i / 10.0;
            double f = wrapped_normal_density(x, sigma);
            CHECK(f > 0.0);
            CHECK(wrapped_normal_density(x + 1.0, sigma) == doctest::Approx(f).epsilon(1e-12));
        }
    }
}

TEST_CASE("mod1 basics") {
    CHECK(mod1(1.25) == doctest::Approx(0.25));
    CHECK(mod1(-0.25) == doctest::Approx(0.75));
    CHECK(mod1(0.0) == 0.0);
    CHECK(mod1(3.0) == 0.0);
}

TEST_CASE("lagrange interpolation reproduces a quadratic") {
    auto f = [](double x) { return 2.0 - x + 3.0 * x * x; };
    std::vector<std::pair<double, double>> pts{{-1.0, f(-1.0)}, {0.5, f(0.5)}, {2.0, f(2.0)}};
    for (double x : {-0.3, 0.0, 1.7}) {
        CHECK(lagrange_eval(pts, x) == doctest::Approx(f(x)).epsilon(1e-12));
    }
}

TEST_CASE("sample stats on a fixed vector") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    SampleStats st = sample_stats(xs);
    CHECK(st.mean == doctest::Approx(2.5));
    CHECK(st.variance == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("ks distance needs enough samples") {
    std::vector<double> tiny{0.1, 0.2};
    CHECK_THROWS_AS(ks_distance(tiny, [](double x) { return x; }), TooFewSamples);
}

TEST_CASE("ks distance small for a uniform grid") {
    std::vector<double> xs;
    for (int i = 0; i < 1000; ++i) xs.push_back((i + 0.5) / 1000.0);
    CHECK(ks_distance(xs, [](double x) { return x; }) < 0.001);
}

TEST_CASE("chi-square quantile inverts the cdf") {
    for (int dof : {1, 5, 81}) {
        for (double p : {0.5, 0.95, 0.999}) {
            double q = chi_square_quantile(p, dof);
            CHECK(gamma_p(dof / 2.0, q / 2.0) == doctest::Approx(p).epsilon(1e-6));
        }
    }
}

TEST_CASE("pearson correlation of an exact linear relation") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 200; ++i) {
        xs.push_back(i * 0.01);
        ys.push_back(3.0 - 2.0 * i * 0.01);
    }
    CHECK(pearson_correlation(xs, ys) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("two-dimensional conditioning matches the conjugate formula") {
    GaussianVector joint;
    joint.mean = {0.0, 0.0};
    joint.covariance = Matrix(2);
    joint.covariance(0, 0) = 2.0;
    joint.covariance(1, 1) = 0.5;
    joint.covariance(0, 1) = joint.covariance(1, 0) = 0.6;
    NormalParams law = gaussian_condition(joint, {1}, {1.3}, 0);
    CHECK(law.mean == doctest::Approx(0.6 / 0.5 * 1.3).epsilon(1e-12));
    CHECK(law.variance == doctest::Approx(2.0 - 0.6 * 0.6 / 0.5).epsilon(1e-12));
}

TEST_CASE("orthonormalize returns an orthonormal spanning set") {
    std::vector<std::vector<double>> vecs{{1.0, 1.0, 0.0}, {1.0, 0.0, 1.0}, {2.0, 1.0, 1.0}};
    std::vector<std::vector<double>> basis = orthonormalize(vecs);
    CHECK(basis.size() == 2); // third vector is the sum of the first two
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(norm2(basis[i]) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            CHECK(dot(basis[i], basis[j]) == doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}

}
