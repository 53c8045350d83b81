#include "iss/schemes_wiener.hpp"

#include <algorithm>
#include <cmath>

#include "iss/errors.hpp"
#include "iss/numerics.hpp"

namespace iss {

namespace {

long grid_index(int M, double t) {
    double scaled = t * M;
    long idx = std::lround(scaled);
    if (std::abs(scaled - idx) > 1e-9 || idx < 0 || idx > M) {
        throw BadParameter("time is not a grid time");
    }
    return idx;
}

} // namespace

WienerPath wiener_sample(int M, Stream& rng) {
    if (M < 2) throw BadParameter("grid must have at least two cells");
    WienerPath p;
    p.M = M;
    p.values.resize(static_cast<std::size_t>(M) + 1);
    p.values[0] = 0.0;
    double step = std::sqrt(1.0 / M);
    for (int i = 1; i <= M; ++i) {
        p.values[static_cast<std::size_t>(i)] =
            p.values[static_cast<std::size_t>(i - 1)] + step * rng.normal();
    }
    return p;
}

double path_value(const WienerPath& p, double t) {
    return p.values[static_cast<std::size_t>(grid_index(p.M, t))];
}

double trapezoid_integral(const WienerPath& p) {
    double sum = 0.5 * (p.values.front() + p.values.back());
    for (std::size_t i = 1; i < p.values.size() - 1; ++i) sum += p.values[i];
    return sum / p.M;
}

DenseScheme make_dense(int M, std::vector<double> participant_times, double epsilon_dense) {
    if (M < 2) throw BadParameter("grid must have at least two cells");
    if (!(epsilon_dense > 0.0) || !(epsilon_dense < 1.0)) {
        throw BadParameter("epsilon_dense must lie in (0,1)");
    }
    std::sort(participant_times.begin(), participant_times.end());
    for (std::size_t i = 0; i < participant_times.size(); ++i) {
        grid_index(M, participant_times[i]);
        if (i > 0 && participant_times[i] == participant_times[i - 1]) {
            throw BadParameter("duplicate participant time");
        }
    }
    return DenseScheme{M, std::move(participant_times), epsilon_dense};
}

Dealing dense_deal(const DenseScheme& s, Stream& rng) {
    WienerPath p = wiener_sample(s.M, rng);
    Dealing d;
    d.secret = trapezoid_integral(p);
    for (double t : s.participant_times) d.shares.push_back({path_value(p, t)});
    return d;
}

WienerEstimate dense_recover(const DenseScheme& s,
                             std::vector<std::pair<double, double>> observations) {
    observations.emplace_back(0.0, 0.0);
    std::sort(observations.begin(), observations.end());
    std::vector<std::pair<double, double>> obs;
    for (const auto& o : observations) {
        grid_index(s.M, o.first);
        if (!obs.empty() && o.first == obs.back().first) {
            if (o.second != obs.back().second) throw BadParameter("conflicting observations");
            continue;
        }
        obs.push_back(o);
    }

    // The conditional mean of W is linear across each gap and flat past the
    // last observation; its integral needs no grid walk because trapezoid
    // sums are exact on piecewise-linear data. A gap only contributes
    // variance when it strictly contains a grid point, since the secret is
    // the grid trapezoid sum.
    WienerEstimate r;
    for (std::size_t i = 0; i + 1 < obs.size(); ++i) {
        double g = obs[i + 1].first - obs[i].first;
        r.estimate += 0.5 * (obs[i].second + obs[i + 1].second) * g;
        if (std::lround(g * s.M) >= 2) r.conditional_variance += g * g * g / 12.0;
    }
    double t_last = obs.back().first;
    if (t_last < 1.0) {
        double g = 1.0 - t_last;
        r.estimate += obs.back().second * g;
        r.conditional_variance += g * g * g / 3.0;
    }
    return r;
}

double dense_max_gap(const DenseScheme& s, const std::vector<double>& times) {
    std::vector<double> t = times;
    t.push_back(0.0);
    std::sort(t.begin(), t.end());
    for (double x : t) grid_index(s.M, x);
    double g = 1.0 - t.back();
    for (std::size_t i = 0; i + 1 < t.size(); ++i) g = std::max(g, t[i + 1] - t[i]);
    return g;
}

bool dense_qualified(const DenseScheme& s, const std::vector<double>& times) {
    return dense_max_gap(s, times) <= s.epsilon_dense;
}

double tree_map(const std::vector<int>& label) {
    double t = 0.5;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (label[i] != 1 && label[i] != -1) throw BadLabel("tree labels are +1/-1 strings");
        t += 0.5 * label[i] * std::ldexp(1.0, -static_cast<int>(i) - 1);
    }
    return t;
}

TreeScheme make_tree(int depth, int M) {
    if (depth < 1) throw BadParameter("depth must be at least 1");
    if (depth > 30) throw BadParameter("depth too large");
    long denom = 1L << (depth + 1);
    if (M < denom || M % denom != 0) {
        throw BadParameter("grid must resolve the deepest node times");
    }
    return TreeScheme{depth, M};
}

std::vector<double> tree_times(const TreeScheme& s) {
    std::vector<double> out;
    std::vector<int> label;
    // Depth-first over all +1/-1 strings up to the depth bound.
    struct Walker {
        int depth;
        std::vector<double>& out;
        void visit(std::vector<int>& label) {
            out.push_back(tree_map(label));
            if (static_cast<int>(label.size()) == depth) return;
            for (int e : {-1, 1}) {
                label.push_back(e);
                visit(label);
                label.pop_back();
            }
        }
    } w{s.depth, out};
    w.visit(label);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<double, double> tree_subtree_interval(const std::vector<int>& label) {
    double t = tree_map(label);
    double half = 0.5 * std::ldexp(1.0, -static_cast<int>(label.size()));
    return {t - half, t + half};
}

LimitScheme make_limit(std::vector<double> participant_times) {
    std::sort(participant_times.begin(), participant_times.end());
    for (std::size_t i = 0; i < participant_times.size(); ++i) {
        if (participant_times[i] < 0.0 || participant_times[i] >= 1.0) {
            throw BadParameter("participant times must lie in [0,1)");
        }
        if (i > 0 && participant_times[i] == participant_times[i - 1]) {
            throw BadParameter("duplicate participant time");
        }
    }
    return LimitScheme{std::move(participant_times)};
}

Dealing limit_deal(const LimitScheme& s, Stream& rng) {
    Dealing d;
    double t = 0.0;
    double w = 0.0;
    for (double next : s.participant_times) {
        w += std::sqrt(next - t) * rng.normal();
        t = next;
        d.shares.push_back({w});
    }
    w += std::sqrt(1.0 - t) * rng.normal();
    d.secret = w;
    return d;
}

WienerEstimate limit_recover(const LimitScheme&,
                             const std::vector<std::pair<double, double>>& observations) {
    if (observations.empty()) throw EmptySubset("need at least one observation");
    WienerEstimate r;
    double best = -1.0;
    for (const auto& o : observations) {
        if (o.first < 0.0 || o.first >= 1.0) throw BadParameter("times must lie in [0,1)");
        if (o.first > best) {
            best = o.first;
            r.estimate = o.second;
        }
    }
    r.conditional_variance = 1.0 - best;
    return r;
}

} // namespace iss
