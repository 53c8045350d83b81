#pragma once

#include <vector>

#include "iss/harness.hpp"

// One verification suite per registered scheme plus the two foundation
// suites. Each returns one report row per checked property.
namespace iss::suites {

std::vector<TrialReport> numerics(const ExperimentConfig&);
std::vector<TrialReport> access(const ExperimentConfig&);
std::vector<TrialReport> modsum(const ExperimentConfig&);
std::vector<TrialReport> composite(const ExperimentConfig&);
std::vector<TrialReport> slope(const ExperimentConfig&);
std::vector<TrialReport> dyadic_ramp(const ExperimentConfig&);
std::vector<TrialReport> projective(const ExperimentConfig&);
std::vector<TrialReport> gauss_threshold(const ExperimentConfig&);
std::vector<TrialReport> gauss_random_degree(const ExperimentConfig&);
std::vector<TrialReport> gauss_l2(const ExperimentConfig&);
std::vector<TrialReport> wiener_dense(const ExperimentConfig&);
std::vector<TrialReport> wiener_tree(const ExperimentConfig&);
std::vector<TrialReport> wiener_limit(const ExperimentConfig&);
std::vector<TrialReport> stat_noisy(const ExperimentConfig&);
std::vector<TrialReport> stat_obfuscated(const ExperimentConfig&);
std::vector<TrialReport> stat_strip(const ExperimentConfig&);
std::vector<TrialReport> hilbert_suite(const ExperimentConfig&);

} // namespace iss::suites
