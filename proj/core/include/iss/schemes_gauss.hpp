#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "iss/dealing.hpp"
#include "iss/numerics.hpp"
#include "iss/rng.hpp"

namespace iss {

// Threshold scheme over the reals: a random polynomial of degree < k is
// pinned by iid normal values at the anchors i/k, the secret is f(0) and
// the share of label p is f(p). The fractional variant keeps only the
// fractional part of the secret.
struct GaussThresholdScheme {
    int k = 2;
    double sigma = 1.0;
    std::vector<double> labels;
    bool fractional_secret = false;
};

GaussThresholdScheme make_gauss_threshold(int k, double sigma, std::vector<double> labels,
                                          bool fractional_secret);

Dealing gauss_deal(const GaussThresholdScheme&, Stream& rng);

// Interpolates k (label, share) pairs and evaluates at 0.
double gauss_recover(const GaussThresholdScheme&, const std::vector<std::pair<double, double>>& shares);

// Conditional law of the secret given k-1 shares. Writing the anchor value
// f(l/k) as s*a_l - b_l, the anchor values being iid normals makes the
// secret normal with mean AB/A^2 and variance sigma^2/A^2.
struct GaussConditional {
    std::vector<double> a_coeffs;
    std::vector<double> b_coeffs;
    double A_sq = 0.0;
    double AB = 0.0;
    NormalParams law;
};

GaussConditional gauss_conditional(const GaussThresholdScheme&,
                                   const std::vector<std::pair<double, double>>& shares);

// Sup distance between the wrapped conditional density given any k-1 shares
// and the wrapped unconditional density, maximized over a grid and over all
// (k-1)-subsets of the labels (one dealing drawn per subset; the variance
// side is value-independent).
double ajtai_secrecy_gap(const GaussThresholdScheme&, int grid_points, Stream& rng);

// Variant that first draws the polynomial degree bound k with probability
// proportional to 2^{-k+1}, truncated at max_k, then deals the fractional
// threshold scheme with sigma = lambda*sqrt(k).
struct RandomDegreeScheme {
    double lambda = 0.5;
    int max_k = 12;
    std::vector<double> labels;

    // The truncated degree weights sum to 1 - 2^{-max_k+1}; expectations
    // against the truncated law divide by that.
    double renorm() const;
};

RandomDegreeScheme make_random_degree(double lambda, int max_k, std::vector<double> labels);

Dealing random_degree_deal(const RandomDegreeScheme&, Stream& rng);

// Lower bound on the conditional density of the secret given observed_count
// shares, on a uniform grid of [0,1): the degrees k > observed_count leave
// the secret nearly uniform and their mixture weight alone keeps the
// density bounded away from zero.
double random_degree_density_floor(const RandomDegreeScheme&, int observed_count, int grid_points);

// All-or-nothing scheme: independent normal summands of summable variance,
// each participant holding one; the secret is the sum (its fractional part
// in the fractional variant).
struct L2Scheme {
    std::vector<double> sigmas;
    double tail_bound = 0.0;
    bool fractional = false;

    double total_variance() const;
};

L2Scheme make_l2(std::vector<double> sigmas, double tail_bound, bool fractional);

Dealing l2_deal(const L2Scheme&, Stream& rng);

double l2_recover(const L2Scheme&, const std::vector<double>& shares);

// Constant-apart bound for the fractional variant: with one participant
// missing, returns the largest c such that the conditional and
// unconditional wrapped densities stay within a factor [c, 1/c] of each
// other on the grid (one dealing drawn for the conditional center).
double l2_fractional_gap(const L2Scheme&, std::size_t excluded, int grid_points, Stream& rng);

} // namespace iss
