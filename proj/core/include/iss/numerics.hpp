#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace iss {

// Fractional part with the floor convention: mod1(-0.25) == 0.75.
double mod1(double x);

struct NormalParams {
    double mean = 0.0;
    double variance = 0.0; // >= 0
};

// Dense symmetric matrix, row-major.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}
    double& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
    double operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

struct GaussianVector {
    std::vector<double> mean;
    Matrix covariance;
};

// Value at `at` of the unique polynomial through the given points, by the
// Lagrange product formula. Throws DuplicateNode on repeated x.
double lagrange_eval(const std::vector<std::pair<double, double>>& points, double at);

// Density at x of a standard normal with deviation sigma reduced mod 1.
// Evaluated by whichever of the two series converges faster; both are
// exposed so the agreement between them can be tested as an identity.
double wrapped_normal_density(double x, double sigma);
double wrapped_normal_lattice(double x, double sigma);
double wrapped_normal_theta(double x, double sigma);

// Exact conditional law of coordinate target_index given the observed
// coordinates, via the Schur complement. The observed block is factored by
// Cholesky; a one-shot 1e-12 relative jitter is applied if the factorization
// stalls, and failure past that throws SingularObservedBlock. An estimate of
// the observed block's condition number is written to *condition_out when
// provided.
NormalParams gaussian_condition(const GaussianVector& joint,
                                const std::vector<std::size_t>& observed_indices,
                                const std::vector<double>& observed_values,
                                std::size_t target_index,
                                double* condition_out = nullptr);

// Sup distance between the empirical CDF of sorted samples and cdf.
// Requires at least 100 samples.
double ks_distance(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf);

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0; // unbiased
};

// One-pass Welford mean/variance. Requires at least 2 samples.
SampleStats sample_stats(const std::vector<double>& samples);

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

// Pearson chi-square statistic of independence on a bins x bins contingency
// table of equal-width cells over [0,1)^2.
double chi_square_independence(const std::vector<double>& xs,
                               const std::vector<double>& ys,
                               int bins = 10);

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

// Quantile of the chi-square distribution with dof degrees of freedom.
double chi_square_quantile(double p, int dof);

// Modified Gram-Schmidt with a reorthogonalization pass. Returns an
// orthonormal basis of the span; input vectors whose residual drops below
// drop_tol (relative to their norm) are discarded.
std::vector<std::vector<double>> orthonormalize(const std::vector<std::vector<double>>& vecs,
                                                double drop_tol = 1e-12);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

} // namespace iss
