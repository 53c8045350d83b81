#pragma once

#include <utility>
#include <vector>

#include "iss/dealing.hpp"
#include "iss/rng.hpp"

namespace iss {

// Random walk on an equally spaced grid of [0,1] with N(0, 1/M) steps;
// values[i] is W(i/M) and values[0] = 0.
struct WienerPath {
    int M = 0;
    std::vector<double> values;
};

WienerPath wiener_sample(int M, Stream& rng);

// W at the grid time closest to t; t must be a grid time.
double path_value(const WienerPath&, double t);

// Grid trapezoid rule for the integral of W over [0,1]. The schemes treat
// this as the secret itself, so recovery is exact rather than limited by
// discretization.
double trapezoid_integral(const WienerPath&);

struct DenseScheme {
    int M = 1 << 14;
    std::vector<double> participant_times;
    double epsilon_dense = 1.0 / 64;
};

DenseScheme make_dense(int M, std::vector<double> participant_times, double epsilon_dense);

Dealing dense_deal(const DenseScheme&, Stream& rng);

struct WienerEstimate {
    double estimate = 0.0;
    double conditional_variance = 0.0;
};

// Conditional mean and variance of the integral secret given W at the
// observed times (0 counts as observed, W(0) = 0). The mean interpolates
// linearly between observations and stays flat after the last one; each
// uncovered gap of length g contributes g^3/12, the terminal gap g^3/3.
WienerEstimate dense_recover(const DenseScheme&, std::vector<std::pair<double, double>> observations);

// Largest uncovered gap, counting 0 as observed and the distance to 1.
double dense_max_gap(const DenseScheme&, const std::vector<double>& times);

bool dense_qualified(const DenseScheme&, const std::vector<double>& times);

// Binary-tree labeling of dense times: the node with label e_1..e_j sits at
// 1/2 + (1/2) * sum e_i/2^i.
double tree_map(const std::vector<int>& label);

struct TreeScheme {
    int depth = 10;
    int M = 1 << 14;
};

TreeScheme make_tree(int depth, int M);

// Times of every node of depth <= depth, sorted.
std::vector<double> tree_times(const TreeScheme&);

// Open interval of times covered by the strict subtree below the node,
// the node itself included.
std::pair<double, double> tree_subtree_interval(const std::vector<int>& label);

// Limit-point scheme: participants observe W before time 1, the secret is
// W(1). Sampling is exact at the listed times, no grid involved.
struct LimitScheme {
    std::vector<double> participant_times;
};

LimitScheme make_limit(std::vector<double> participant_times);

Dealing limit_deal(const LimitScheme&, Stream& rng);

// Estimate is the value at the largest observed time t*, variance 1 - t*.
WienerEstimate limit_recover(const LimitScheme&, const std::vector<std::pair<double, double>>& observations);

} // namespace iss
