#include "iss/schemes_gauss.hpp"

#include <algorithm>
#include <cmath>

#include "iss/errors.hpp"

namespace iss {

namespace {

void check_labels(const std::vector<double>& labels, bool need_above_one) {
    if (labels.empty()) throw BadParameter("need at least one participant label");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!std::isfinite(labels[i]) || labels[i] == 0.0) throw BadLabel("labels must be finite and nonzero");
        if (need_above_one && labels[i] <= 1.0) throw BadLabel("fractional variant needs labels > 1");
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (labels[i] == labels[j]) throw BadLabel("duplicate label");
        }
    }
}

std::vector<double> anchor_nodes(int k) {
    std::vector<double> x(static_cast<std::size_t>(k));
    for (int l = 1; l <= k; ++l) x[static_cast<std::size_t>(l - 1)] = static_cast<double>(l) / k;
    return x;
}

double binom_2k_k(int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (k + i) / i;
    return b;
}

} // namespace

GaussThresholdScheme make_gauss_threshold(int k, double sigma, std::vector<double> labels,
                                          bool fractional_secret) {
    if (k < 2) throw BadParameter("threshold k must be at least 2");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw BadParameter("sigma must be positive");
    check_labels(labels, fractional_secret);
    return GaussThresholdScheme{k, sigma, std::move(labels), fractional_secret};
}

Dealing gauss_deal(const GaussThresholdScheme& s, Stream& rng) {
    std::vector<std::pair<double, double>> anchors;
    anchors.reserve(static_cast<std::size_t>(s.k));
    for (double x : anchor_nodes(s.k)) anchors.emplace_back(x, s.sigma * rng.normal());

    Dealing d;
    double raw = lagrange_eval(anchors, 0.0);
    d.secret = s.fractional_secret ? mod1(raw) : raw;
    d.realized_k = s.k;
    for (double p : s.labels) d.shares.push_back({lagrange_eval(anchors, p)});
    return d;
}

double gauss_recover(const GaussThresholdScheme& s,
                     const std::vector<std::pair<double, double>>& shares) {
    if (shares.size() != static_cast<std::size_t>(s.k)) {
        throw WrongShareCount("recovery needs exactly k shares");
    }
    double raw = lagrange_eval(shares, 0.0);
    return s.fractional_secret ? mod1(raw) : raw;
}

GaussConditional gauss_conditional(const GaussThresholdScheme& s,
                                   const std::vector<std::pair<double, double>>& shares) {
    if (shares.size() != static_cast<std::size_t>(s.k) - 1) {
        throw WrongShareCount("conditioning needs exactly k-1 shares");
    }
    for (std::size_t i = 0; i < shares.size(); ++i) {
        if (shares[i].first == 0.0) throw BadLabel("label 0 is the secret's own position");
        for (std::size_t j = i + 1; j < shares.size(); ++j) {
            if (shares[i].first == shares[j].first) throw DuplicateNode("duplicate label");
        }
    }

    // With k-1 shares fixed, f is determined by the secret s alone:
    // f = s*M + sum_j h_j*N_j in the Lagrange basis over {0, p_1..p_{k-1}},
    // so each anchor value is s*a_l - b_l.
    GaussConditional c;
    std::vector<double> nodes = anchor_nodes(s.k);
    for (double x : nodes) {
        double a = 1.0;
        for (const auto& sh : shares) a *= (x - sh.first) / (0.0 - sh.first);
        double b = 0.0;
        for (std::size_t j = 0; j < shares.size(); ++j) {
            double pj = shares[j].first;
            double nj = x / pj;
            for (std::size_t i = 0; i < shares.size(); ++i) {
                if (i == j) continue;
                nj *= (x - shares[i].first) / (pj - shares[i].first);
            }
            b -= shares[j].second * nj;
        }
        c.a_coeffs.push_back(a);
        c.b_coeffs.push_back(b);
        c.A_sq += a * a;
        c.AB += a * b;
    }
    c.law.mean = c.AB / c.A_sq;
    c.law.variance = s.sigma * s.sigma / c.A_sq;
    return c;
}

double ajtai_secrecy_gap(const GaussThresholdScheme& s, int grid_points, Stream& rng) {
    if (!s.fractional_secret) throw NotFractional("secrecy gap is for the fractional variant");
    if (grid_points < 2) throw BadParameter("need at least two grid points");
    std::size_t m = static_cast<std::size_t>(s.k) - 1;
    if (s.labels.size() < m) throw BadParameter("need at least k-1 labels");

    double var_u = s.sigma * s.sigma * (binom_2k_k(s.k) - 1.0);
    double sd_u = std::sqrt(var_u);

    // Walk all (k-1)-subsets of the labels with a pick vector.
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    double gap = 0.0;
    for (;;) {
        Dealing d = gauss_deal(s, rng);
        std::vector<std::pair<double, double>> obs;
        for (std::size_t i : pick) obs.emplace_back(s.labels[i], d.shares[i][0]);
        GaussConditional c = gauss_conditional(s, obs);
        double sd_c = std::sqrt(c.law.variance);
        for (int g = 0; g < grid_points; ++g) {
            double x = static_cast<double>(g) / grid_points;
            double diff = std::abs(wrapped_normal_density(mod1(x - c.law.mean), sd_c) -
                                   wrapped_normal_density(x, sd_u));
            gap = std::max(gap, diff);
        }

        std::size_t i = m;
        while (i > 0 && pick[i - 1] == s.labels.size() - m + (i - 1)) --i;
        if (i == 0) break;
        pick[i - 1] += 1;
        for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
    return gap;
}

double RandomDegreeScheme::renorm() const { return 1.0 / (1.0 - std::ldexp(1.0, -max_k + 1)); }

RandomDegreeScheme make_random_degree(double lambda, int max_k, std::vector<double> labels) {
    if (!(lambda > 0.0)) throw BadParameter("lambda must be positive");
    if (max_k < 2) throw BadParameter("max_k must be at least 2");
    check_labels(labels, true);
    return RandomDegreeScheme{lambda, max_k, std::move(labels)};
}

Dealing random_degree_deal(const RandomDegreeScheme& s, Stream& rng) {
    double u = rng.uniform01() / s.renorm();
    int k = s.max_k;
    double acc = 0.0;
    for (int cand = 2; cand < s.max_k; ++cand) {
        acc += std::ldexp(1.0, -cand + 1);
        if (u < acc) {
            k = cand;
            break;
        }
    }
    GaussThresholdScheme inner{k, s.lambda * std::sqrt(static_cast<double>(k)), s.labels, true};
    Dealing d = gauss_deal(inner, rng);
    d.realized_k = k;
    return d;
}

double random_degree_density_floor(const RandomDegreeScheme& s, int observed_count,
                                   int grid_points) {
    if (observed_count < 1) throw BadParameter("need at least one observed share");
    if (grid_points < 2) throw BadParameter("need at least two grid points");
    std::size_t m = static_cast<std::size_t>(observed_count);
    if (s.labels.size() < m) throw BadParameter("fewer labels than observed shares");

    // Degrees k <= m pin the secret exactly and only add mass; the floor
    // comes from the k > m branch, where the residual variance given m
    // shares still exceeds lambda^2 (labels > 1) and wraps nearly flat.
    double floor_sum = 0.0;
    for (int k = observed_count + 1; k <= s.max_k; ++k) {
        double var_k = s.lambda * s.lambda * k;
        std::vector<double> nodes = anchor_nodes(k);

        // Joint covariance of (f(0), f(p_1)..f(p_m)) through the anchor basis.
        auto basis_at = [&](double x) {
            std::vector<double> L(nodes.size());
            for (std::size_t l = 0; l < nodes.size(); ++l) {
                double v = 1.0;
                for (std::size_t j = 0; j < nodes.size(); ++j) {
                    if (j != l) v *= (x - nodes[j]) / (nodes[l] - nodes[j]);
                }
                L[l] = v;
            }
            return L;
        };
        std::vector<std::vector<double>> rows;
        rows.push_back(basis_at(0.0));
        for (std::size_t i = 0; i < m; ++i) rows.push_back(basis_at(s.labels[i]));

        GaussianVector joint;
        joint.mean.assign(rows.size(), 0.0);
        joint.covariance = Matrix(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = 0; j < rows.size(); ++j) {
                double cov = 0.0;
                for (std::size_t l = 0; l < nodes.size(); ++l) cov += rows[i][l] * rows[j][l];
                joint.covariance(i, j) = var_k * cov;
            }
        }
        std::vector<std::size_t> idx(m);
        std::vector<double> vals(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i + 1;

        double v;
        try {
            v = gaussian_condition(joint, idx, vals, 0).variance;
        } catch (const SingularObservedBlock&) {
            v = 0.0;
        }
        // Conditioning on fewer shares cannot push the variance below the
        // full (k-1)-share value, which labels > 1 keep above lambda^2;
        // clamp so a loss of precision here stays conservative.
        v = std::max(v, s.lambda * s.lambda);

        double wn_min = wrapped_normal_density(0.0, std::sqrt(v));
        for (int g = 0; g < grid_points; ++g) {
            wn_min = std::min(wn_min, wrapped_normal_density(static_cast<double>(g) / grid_points,
                                                             std::sqrt(v)));
        }
        floor_sum += std::ldexp(1.0, -k + 1) * s.renorm() * wn_min;
    }
    return floor_sum;
}

double L2Scheme::total_variance() const {
    double t = 0.0;
    for (double s : sigmas) t += s * s;
    return t;
}

L2Scheme make_l2(std::vector<double> sigmas, double tail_bound, bool fractional) {
    if (sigmas.empty()) throw BadParameter("need at least one summand");
    for (double s : sigmas) {
        if (!(s > 0.0) || !std::isfinite(s)) throw BadParameter("sigmas must be positive");
    }
    if (tail_bound < 0.0) throw BadParameter("tail bound cannot be negative");
    return L2Scheme{std::move(sigmas), tail_bound, fractional};
}

Dealing l2_deal(const L2Scheme& s, Stream& rng) {
    Dealing d;
    double sum = 0.0;
    for (double sig : s.sigmas) {
        double h = sig * rng.normal();
        d.shares.push_back({h});
        sum += h;
    }
    d.secret = s.fractional ? mod1(sum) : sum;
    return d;
}

double l2_recover(const L2Scheme& s, const std::vector<double>& shares) {
    if (shares.size() != s.sigmas.size()) throw WrongShareCount("need every summand");
    double sum = 0.0;
    for (double h : shares) sum += h;
    return s.fractional ? mod1(sum) : sum;
}

double l2_fractional_gap(const L2Scheme& s, std::size_t excluded, int grid_points, Stream& rng) {
    if (!s.fractional) throw NotFractional("constant-apart bound is for the fractional variant");
    if (excluded >= s.sigmas.size()) throw UnknownParticipant("no such summand");
    if (grid_points < 2) throw BadParameter("need at least two grid points");

    Dealing d = l2_deal(s, rng);
    double known = 0.0;
    for (std::size_t i = 0; i < s.sigmas.size(); ++i) {
        if (i != excluded) known += d.shares[i][0];
    }
    double sd_c = s.sigmas[excluded];
    double sd_u = std::sqrt(s.total_variance());

    double c = 1.0;
    for (int g = 0; g < grid_points; ++g) {
        double x = static_cast<double>(g) / grid_points;
        double cond = wrapped_normal_density(mod1(x - known), sd_c);
        double unc = wrapped_normal_density(x, sd_u);
        c = std::min(c, std::min(cond / unc, unc / cond));
    }
    if (!(c > 0.0)) throw NonFinite("density ratio degenerated");
    return c;
}

} // namespace iss
