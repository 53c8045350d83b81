#include "iss/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "iss/errors.hpp"

namespace iss {

double mod1(double x) {
    if (!std::isfinite(x))
        throw NonFinite("mod1 requires a finite argument");
    double r = x - std::floor(x);
    if (r >= 1.0) // rounding can land exactly on 1 for tiny negative x
        r = 0.0;
    return r;
}

double lagrange_eval(const std::vector<std::pair<double, double>>& points, double at) {
    const std::size_t n = points.size();
    if (n == 0)
        throw BadParameter("lagrange_eval requires at least one point");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i].first == points[j].first)
                throw DuplicateNode("repeated interpolation node");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double basis = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            basis *= (at - points[j].first) / (points[i].first - points[j].first);
        }
        acc += basis * points[i].second;
    }
    return acc;
}

double wrapped_normal_lattice(double x, double sigma) {
    if (!(sigma > 0))
        throw BadParameter("sigma must be positive");
    x = mod1(x);
    // Dropped terms have exponent below -36.8, keeping the tail under 1e-14.
    const int nmax = int(std::ceil(1.0 + sigma * 8.6)) + 1;
    const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
    double sum = 0.0;
    for (int n = -nmax; n <= nmax; ++n)
        sum += std::exp(-(x - n) * (x - n) * inv2s2);
    return sum / (sigma * std::sqrt(2.0 * std::acos(-1.0)));
}

double wrapped_normal_theta(double x, double sigma) {
    if (!(sigma > 0))
        throw BadParameter("sigma must be positive");
    x = mod1(x);
    const double pi = std::acos(-1.0);
    const int mmax = int(std::ceil(1.37 / sigma)) + 1;
    double sum = 1.0;
    for (int m = 1; m <= mmax; ++m)
        sum += 2.0 * std::exp(-2.0 * pi * pi * sigma * sigma * m * m) *
               std::cos(2.0 * pi * m * x);
    return sum;
}

double wrapped_normal_density(double x, double sigma) {
    return sigma <= 0.7 ? wrapped_normal_lattice(x, sigma)
                        : wrapped_normal_theta(x, sigma);
}

namespace {

// Lower-triangular Cholesky factor in place; false if a pivot stalls.
bool cholesky(Matrix& m) {
    const std::size_t n = m.n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (std::size_t k = 0; k < j; ++k)
                s -= m(i, k) * m(j, k);
            if (i == j) {
                if (!(s > 0))
                    return false;
                m(i, i) = std::sqrt(s);
            } else {
                m(i, j) = s / m(j, j);
            }
        }
        for (std::size_t j = i + 1; j < n; ++j)
            m(i, j) = 0.0;
    }
    return true;
}

std::vector<double> cholesky_solve(const Matrix& L, std::vector<double> b) {
    const std::size_t n = L.n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k)
            b[i] -= L(i, k) * b[k];
        b[i] /= L(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k)
            b[i] -= L(k, i) * b[k];
        b[i] /= L(i, i);
    }
    return b;
}

} // namespace

NormalParams gaussian_condition(const GaussianVector& joint,
                                const std::vector<std::size_t>& observed_indices,
                                const std::vector<double>& observed_values,
                                std::size_t target_index,
                                double* condition_out) {
    const std::size_t dim = joint.covariance.n;
    if (joint.mean.size() != dim)
        throw BadParameter("mean/covariance dimension mismatch");
    if (observed_indices.size() != observed_values.size())
        throw BadParameter("observed indices/values length mismatch");
    if (target_index >= dim)
        throw BadParameter("target index out of range");
    for (std::size_t idx : observed_indices) {
        if (idx >= dim)
            throw BadParameter("observed index out of range");
        if (idx == target_index)
            throw BadParameter("target coordinate cannot be observed");
    }
    const std::size_t m = observed_indices.size();
    if (m == 0)
        return {joint.mean[target_index], joint.covariance(target_index, target_index)};

    Matrix S(m);
    std::vector<double> cross(m), delta(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            S(i, j) = joint.covariance(observed_indices[i], observed_indices[j]);
        cross[i] = joint.covariance(target_index, observed_indices[i]);
        delta[i] = observed_values[i] - joint.mean[observed_indices[i]];
    }

    Matrix L = S;
    if (!cholesky(L)) {
        double maxdiag = 1.0;
        for (std::size_t i = 0; i < m; ++i)
            maxdiag = std::max(maxdiag, S(i, i));
        L = S;
        for (std::size_t i = 0; i < m; ++i)
            L(i, i) += 1e-12 * maxdiag;
        if (!cholesky(L))
            throw SingularObservedBlock("observed covariance block is singular");
    }
    if (condition_out) {
        double lo = L(0, 0), hi = L(0, 0);
        for (std::size_t i = 1; i < m; ++i) {
            lo = std::min(lo, L(i, i));
            hi = std::max(hi, L(i, i));
        }
        *condition_out = (hi / lo) * (hi / lo);
    }

    const std::vector<double> s_inv_cross = cholesky_solve(L, cross);
    const std::vector<double> s_inv_delta = cholesky_solve(L, delta);
    double mean = joint.mean[target_index];
    double var = joint.covariance(target_index, target_index);
    for (std::size_t i = 0; i < m; ++i) {
        mean += cross[i] * s_inv_delta[i];
        var -= cross[i] * s_inv_cross[i];
    }
    return {mean, std::max(var, 0.0)};
}

double ks_distance(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf) {
    const std::size_t n = sorted_samples.size();
    if (n < 100)
        throw TooFewSamples("ks_distance requires at least 100 samples");
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted_samples[i]);
        d = std::max(d, f - double(i) / n);
        d = std::max(d, double(i + 1) / n - f);
    }
    return d;
}

SampleStats sample_stats(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n < 2)
        throw TooFewSamples("sample_stats requires at least 2 samples");
    double mean = 0.0, m2 = 0.0;
    std::size_t count = 0;
    for (double x : samples) {
        count += 1;
        const double d1 = x - mean;
        mean += d1 / count;
        m2 += d1 * (x - mean);
    }
    return {mean, m2 / (n - 1)};
}

double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw BadParameter("correlation inputs differ in length");
    if (xs.size() < 2)
        throw TooFewSamples("correlation requires at least 2 samples");
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

double chi_square_independence(const std::vector<double>& xs,
                               const std::vector<double>& ys,
                               int bins) {
    if (xs.size() != ys.size())
        throw BadParameter("chi-square inputs differ in length");
    if (bins < 2)
        throw BadParameter("need at least 2 bins");
    const std::size_t n = xs.size();
    if (n < std::size_t(bins) * bins * 5)
        throw TooFewSamples("too few samples for the bin count");
    std::vector<long> counts(std::size_t(bins) * bins, 0);
    std::vector<long> row(bins, 0), col(bins, 0);
    auto bin_of = [bins](double v) {
        int b = int(v * bins);
        return std::clamp(b, 0, bins - 1);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const int bx = bin_of(xs[i]);
        const int by = bin_of(ys[i]);
        counts[std::size_t(bx) * bins + by] += 1;
        row[bx] += 1;
        col[by] += 1;
    }
    double stat = 0.0;
    for (int i = 0; i < bins; ++i) {
        for (int j = 0; j < bins; ++j) {
            const double expected = double(row[i]) * col[j] / double(n);
            if (expected <= 0.0)
                continue;
            const double diff = counts[std::size_t(i) * bins + j] - expected;
            stat += diff * diff / expected;
        }
    }
    return stat;
}

double gamma_p(double a, double x) {
    if (!(a > 0) || x < 0)
        throw BadParameter("gamma_p domain");
    if (x == 0.0)
        return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // series expansion
        double ap = a, del = 1.0 / a, sum = del;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16)
                break;
        }
        return sum * std::exp(-x + a * std::log(x) - lg);
    }
    // continued fraction for the upper tail
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            break;
    }
    const double q = std::exp(-x + a * std::log(x) - lg) * h;
    return 1.0 - q;
}

double chi_square_quantile(double p, int dof) {
    if (!(p > 0 && p < 1) || dof < 1)
        throw BadParameter("chi_square_quantile domain");
    const double a = dof / 2.0;
    double lo = 0.0, hi = dof + 100.0 * std::sqrt(double(dof)) + 100.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_p(a, mid / 2.0) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm2(const std::vector<double>& a) {
    return std::sqrt(dot(a, a));
}

std::vector<std::vector<double>> orthonormalize(const std::vector<std::vector<double>>& vecs,
                                                double drop_tol) {
    std::vector<std::vector<double>> q;
    for (const auto& v : vecs) {
        const double orig = norm2(v);
        if (orig == 0.0)
            continue;
        std::vector<double> w = v;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : q) {
                const double proj = dot(w, u);
                for (std::size_t i = 0; i < w.size(); ++i)
                    w[i] -= proj * u[i];
            }
        const double nw = norm2(w);
        if (nw <= drop_tol * orig)
            continue;
        for (double& c : w)
            c /= nw;
        q.push_back(std::move(w));
    }
    return q;
}

} // namespace iss
