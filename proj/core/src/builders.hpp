#pragma once

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "iss/access.hpp"
#include "iss/errors.hpp"
#include "iss/harness.hpp"
#include "iss/hilbert.hpp"
#include "iss/schemes_gauss.hpp"
#include "iss/schemes_projective.hpp"
#include "iss/schemes_stat.hpp"
#include "iss/schemes_uniform.hpp"
#include "iss/schemes_wiener.hpp"

// Scheme construction from an ExperimentConfig, shared by the command
// entry points and the verification suites so defaults stay in one place.
namespace iss::builders {

inline std::vector<double> default_rd_labels(int max_k) {
    std::vector<double> labels;
    for (int i = 0; i < max_k; ++i) labels.push_back(1.5 + i);
    return labels;
}

inline std::vector<double> default_l2_sigmas() {
    std::vector<double> s;
    for (int i = 1; i <= 20; ++i) s.push_back(std::ldexp(1.0, -i));
    return s;
}

inline std::vector<double> default_dense_times() {
    std::vector<double> t;
    for (int j = 1; j <= 64; ++j) t.push_back(j / 64.0);
    return t;
}

inline std::vector<double> default_limit_times() {
    std::vector<double> t;
    for (int i = 1; i <= 32; ++i) t.push_back(1.0 - 1.0 / (i + 1));
    return t;
}

inline ModSumScheme modsum_from(const ExperimentConfig& cfg) {
    return ModSumScheme{static_cast<int>(param_int(cfg, "n", 3))};
}

inline AccessStructure structure_from(const ExperimentConfig& cfg) {
    long n = param_int(cfg, "n", 3);
    std::string rule = param_str(cfg, "rule", "");
    std::string base = param_str(cfg, "base", rule.empty() ? "0,1;1,2" : "");
    if (!base.empty()) {
        std::vector<std::set<int>> elems;
        std::stringstream ss(base);
        std::string elem;
        while (std::getline(ss, elem, ';')) {
            std::set<int> e;
            std::stringstream es(elem);
            std::string idx;
            while (std::getline(es, idx, ',')) {
                std::size_t b = idx.find_first_not_of(" \t");
                if (b == std::string::npos) continue;
                e.insert(std::stoi(idx.substr(b)));
            }
            if (!e.empty()) elems.push_back(std::move(e));
        }
        return AccessStructure::from_base(static_cast<int>(n), std::move(elems));
    }
    std::istringstream rs(rule);
    return AccessStructure::parse(rs, static_cast<int>(n));
}

inline SlopeScheme slope_from(const ExperimentConfig& cfg) {
    return SlopeScheme{param_reals(cfg, "labels", {0.25, 0.5, 0.75})};
}

inline DyadicRampScheme ramp_from(const ExperimentConfig& cfg) {
    return DyadicRampScheme{static_cast<int>(param_int(cfg, "n", 20))};
}

inline ProjectiveScheme projective_from(const ExperimentConfig& cfg) {
    const double pi = std::acos(-1.0);
    std::vector<double> angles = param_reals(cfg, "angles", {0.4, 0.9, pi / 2});
    return make_projective_scheme(angles);
}

inline GaussThresholdScheme gauss_from(const ExperimentConfig& cfg) {
    long k = param_int(cfg, "k", 3);
    bool fractional = param_int(cfg, "fractional", 0) != 0;
    double lambda = param_real(cfg, "lambda", 0.5);
    double sigma = param_real(cfg, "sigma", fractional ? lambda * std::sqrt(double(k)) : 1.0);
    std::vector<double> fallback;
    for (long i = 0; i < std::max(3L, k); ++i) fallback.push_back(1.5 + double(i));
    std::vector<double> labels = param_reals(cfg, "labels", fallback);
    return make_gauss_threshold(static_cast<int>(k), sigma, std::move(labels), fractional);
}

inline RandomDegreeScheme random_degree_from(const ExperimentConfig& cfg) {
    int max_k = static_cast<int>(param_int(cfg, "max-k", 12));
    return make_random_degree(param_real(cfg, "lambda", 0.5), max_k,
                              param_reals(cfg, "labels", default_rd_labels(max_k)));
}

inline L2Scheme l2_from(const ExperimentConfig& cfg) {
    return make_l2(param_reals(cfg, "sigmas", default_l2_sigmas()), param_real(cfg, "tail", 0.0),
                   param_int(cfg, "fractional", 0) != 0);
}

inline DenseScheme dense_from(const ExperimentConfig& cfg) {
    return make_dense(static_cast<int>(param_int(cfg, "M", 1 << 14)),
                      param_reals(cfg, "times", default_dense_times()),
                      param_real(cfg, "epsilon", 1.0 / 32));
}

inline TreeScheme tree_from(const ExperimentConfig& cfg) {
    return make_tree(static_cast<int>(param_int(cfg, "depth", 10)),
                     static_cast<int>(param_int(cfg, "M", 1 << 14)));
}

// The tree instance viewed through the dense machinery it delegates to.
inline DenseScheme tree_dense_from(const ExperimentConfig& cfg) {
    TreeScheme tree = tree_from(cfg);
    return make_dense(tree.M, tree_times(tree), param_real(cfg, "epsilon", 1.0 / 1024));
}

inline LimitScheme limit_from(const ExperimentConfig& cfg) {
    return make_limit(param_reals(cfg, "times", default_limit_times()));
}

inline NoisyScheme noisy_from(const ExperimentConfig& cfg) {
    return make_noisy(static_cast<int>(param_int(cfg, "n", 100)));
}

inline ObfuscatedScheme obfuscated_from(const ExperimentConfig& cfg) {
    return make_obfuscated(param_reals(cfg, "r-values", {1.5, 2.5, 3.5}));
}

inline StripScheme strip_from(const ExperimentConfig& cfg) {
    return make_strip(param_real(cfg, "R", 400.0), param_real(cfg, "d", 6.0));
}

inline HilbertProgram program_from(const ExperimentConfig& cfg) {
    std::string path = param_str(cfg, "program", "");
    if (path.empty()) {
        return program_from_obfuscated(param_reals(cfg, "r-values", {1.5, 2.5, 3.5}));
    }
    std::ifstream in(path);
    if (!in) throw BadParameter("cannot open program file " + path);
    return parse_program(in);
}

} // namespace iss::builders
