#pragma once

#include <cstdint>

namespace iss {

// Counter-based deterministic generator. A Stream is a pure function of
// (seed, stream_id, counter): the i-th output is fixed no matter how many
// other streams exist or in what order they are consumed. Trials get
// substream(seed, trial_index) so Monte Carlo runs are reproducible under
// any parallel schedule.
class Stream {
  public:
    Stream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // Uniform on [0,1) with 53 random bits.
    double uniform01();

    // Standard normal via a 256-layer ziggurat.
    double normal();

    // Standard normal via the inverse-CDF map of one uniform draw. Slower;
    // kept as an independent sampler for distribution cross-checks.
    double normal_icdf();

  private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

inline Stream substream(std::uint64_t seed, std::uint64_t trial_index) {
    return Stream(seed, trial_index);
}

// Mixes a salt into a seed so independent experiment phases get unrelated
// substream families from one user-facing seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

// Quantile of the standard normal (Wichura's PPND16). Accurate to ~1e-15
// for p in (0,1); throws BadParameter outside.
double normal_quantile(double p);

double normal_cdf(double x);

} // namespace iss
