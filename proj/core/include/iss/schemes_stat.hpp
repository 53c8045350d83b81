#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "iss/dealing.hpp"
#include "iss/rng.hpp"

namespace iss {

// Noisy-measurement scheme: every share is the secret plus independent
// standard normal noise, so large subsets estimate it by averaging.
struct NoisyScheme {
    int n = 2;
};

NoisyScheme make_noisy(int n);

Dealing noisy_deal(const NoisyScheme&, Stream& rng);

// Obfuscated variant: a shared nuisance eta enters share i scaled by r_i.
struct ObfuscatedScheme {
    std::vector<double> r_values;
};

ObfuscatedScheme make_obfuscated(std::vector<double> r_values);

Dealing obfuscated_deal(const ObfuscatedScheme&, Stream& rng);

// Conditional variance of the secret given the shares with obfuscating
// values r_1..r_n, by the closed form
//   1/sigma^2 = 1 + (1 + S) / (rbar^2 + (1 + S)/n),  S = sum (r_i-rbar)^2.
double stat2_variance(const std::vector<double>& r_values);

// Lattice-strip structure: participants are the positive integer lattice
// points within distance R of the origin, each carrying its polar angle and
// the obfuscating value 1 + angle.
struct StripPoint {
    long x = 0;
    long y = 0;
    double phi = 0.0;
    double r = 0.0;
    double dist = 0.0;
};

struct StripScheme {
    double R = 400.0;
    double d = 6.0;
};

StripScheme make_strip(double R, double d);

// All participants, ordered by distance from the origin.
std::vector<StripPoint> strip_participants(const StripScheme&);

// Participants within perpendicular distance d/2 of the ray at
// direction_angle, ordered by distance from the origin.
std::vector<StripPoint> strip_members(const StripScheme&, double direction_angle, double d);

double strip_deviation_sum(const std::vector<StripPoint>& members, double direction_angle);

enum class StripVerdict { Unqualified, Qualified, Inconclusive };

struct StripQualification {
    StripVerdict verdict = StripVerdict::Inconclusive;
    double limiting_variance = 0.0;
    // (prefix size, conditional variance) at every prefix.
    std::vector<std::pair<std::size_t, double>> trace;
};

// Scans stat2_variance over distance-ordered prefixes. Divergence of the
// deviation sum is not decidable from a finite prefix, so the verdict uses
// the largest full doubling m -> 2m: near-unit ratio means the variance has
// stopped falling (unqualified), a clearly falling ratio together with a
// collapsed final value means it is heading to zero (qualified), anything
// else is reported as inconclusive rather than guessed.
StripQualification strip_qualification(const StripScheme&, const std::vector<StripPoint>& subset);

} // namespace iss
