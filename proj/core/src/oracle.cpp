#include "iss/oracle.hpp"

#include <cmath>
#include <cstddef>

#include "iss/errors.hpp"

namespace iss::oracle {

namespace {

#ifdef __SIZEOF_FLOAT128__
using real = __float128;
#else
using real = long double;
#endif

// Square root without a quad math library: Newton from the double seed.
real rsqrt(real x) {
    if (x <= 0) throw SingularObservedBlock("oracle pivot is not positive");
    real r = std::sqrt(static_cast<double>(x));
    for (int i = 0; i < 4; ++i) r = real(0.5) * (r + x / r);
    return r;
}

struct Mat {
    std::size_t n = 0;
    std::vector<real> a;
    explicit Mat(std::size_t n_) : n(n_), a(n_ * n_, real(0)) {}
    real& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    real operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// In-place lower Cholesky.
void cholesky(Mat& m) {
    for (std::size_t j = 0; j < m.n; ++j) {
        real d = m(j, j);
        for (std::size_t l = 0; l < j; ++l) d -= m(j, l) * m(j, l);
        real piv = rsqrt(d);
        m(j, j) = piv;
        for (std::size_t i = j + 1; i < m.n; ++i) {
            real v = m(i, j);
            for (std::size_t l = 0; l < j; ++l) v -= m(i, l) * m(j, l);
            m(i, j) = v / piv;
        }
    }
}

std::vector<real> forward_solve(const Mat& chol, std::vector<real> b) {
    for (std::size_t i = 0; i < chol.n; ++i) {
        for (std::size_t l = 0; l < i; ++l) b[i] -= chol(i, l) * b[l];
        b[i] /= chol(i, i);
    }
    return b;
}

// Given the joint covariance of (target, obs_1..obs_m), return the
// conditional law of the target via mean = c' S^-1 y, var = v - c' S^-1 c.
std::pair<double, double> schur(const Mat& joint, const std::vector<real>& values) {
    std::size_t m = joint.n - 1;
    Mat s(m);
    std::vector<real> c(m), y(values);
    for (std::size_t i = 0; i < m; ++i) {
        c[i] = joint(0, i + 1);
        for (std::size_t j = 0; j < m; ++j) s(i, j) = joint(i + 1, j + 1);
    }
    cholesky(s);
    std::vector<real> hc = forward_solve(s, c);
    std::vector<real> hy = forward_solve(s, y);
    real mean = 0, quad = 0;
    for (std::size_t i = 0; i < m; ++i) {
        mean += hc[i] * hy[i];
        quad += hc[i] * hc[i];
    }
    return {static_cast<double>(mean), static_cast<double>(joint(0, 0) - quad)};
}

} // namespace

std::pair<double, double> gauss_conditional(int k, double sigma,
                                            const std::vector<std::pair<double, double>>& shares) {
    if (k < 2) throw BadParameter("threshold k must be at least 2");
    std::size_t m = shares.size();
    std::vector<real> xs;
    xs.push_back(real(0));
    for (const auto& sh : shares) xs.push_back(real(sh.first));

    // Lagrange basis over the nodes, evaluated at each point of interest.
    std::vector<std::vector<real>> basis;
    for (real x : xs) {
        std::vector<real> row(static_cast<std::size_t>(k));
        for (int l = 1; l <= k; ++l) {
            real v = 1;
            real xl = real(l) / real(k);
            for (int j = 1; j <= k; ++j) {
                if (j == l) continue;
                real xj = real(j) / real(k);
                v *= (x - xj) / (xl - xj);
            }
            row[static_cast<std::size_t>(l - 1)] = v;
        }
        basis.push_back(std::move(row));
    }

    real var = real(sigma) * real(sigma);
    Mat joint(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = 0; j <= m; ++j) {
            real cov = 0;
            for (int l = 0; l < k; ++l) cov += basis[i][std::size_t(l)] * basis[j][std::size_t(l)];
            joint(i, j) = var * cov;
        }
    }
    std::vector<real> values;
    for (const auto& sh : shares) values.push_back(real(sh.second));
    return schur(joint, values);
}

double stat2_variance(const std::vector<double>& r_values) {
    if (r_values.empty()) throw TooFewSamples("need at least one multiplier");
    std::size_t n = r_values.size();
    Mat joint(n + 1);
    joint(0, 0) = 1;
    for (std::size_t i = 0; i < n; ++i) {
        joint(0, i + 1) = joint(i + 1, 0) = 1;
        for (std::size_t j = 0; j < n; ++j) {
            joint(i + 1, j + 1) = real(1) + real(r_values[i]) * real(r_values[j]) + (i == j ? 1 : 0);
        }
    }
    return schur(joint, std::vector<real>(n, real(0))).second;
}

} // namespace iss::oracle
