#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "iss/dealing.hpp"
#include "iss/rng.hpp"

namespace iss {

struct ExperimentConfig {
    std::string scheme;
    std::map<std::string, std::string> params;
    long trials = 100000;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_path;
};

// Parameter lookup with defaults; values are the raw CLI/config strings.
double param_real(const ExperimentConfig&, const std::string& key, double fallback);
long param_int(const ExperimentConfig&, const std::string& key, long fallback);
std::vector<double> param_reals(const ExperimentConfig&, const std::string& key,
                                const std::vector<double>& fallback);
std::string param_str(const ExperimentConfig&, const std::string& key,
                      const std::string& fallback);

// Plain key=value file; later lines win, CLI flags override afterwards.
std::map<std::string, std::string> parse_config_file(const std::string& path);

struct TrialReport {
    std::string check;
    double expected = 0.0;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    long trials = 0;
    // Kept out of the CSV so timing noise cannot break byte-determinism.
    double wall_seconds = 0.0;
};

std::string format17(double);

// CSV columns check,expected,observed,tolerance,pass; rows sorted by check
// name so aggregation order never shows.
void emit_reports_csv(std::ostream&, std::vector<TrialReport> reports);

// CSV columns trial,secret,participant_index,share_component_index,value.
void emit_dealings_csv(std::ostream&, const std::vector<Dealing>&);

std::vector<std::string> verify_suites();

std::vector<TrialReport> run_verify(const ExperimentConfig&);

// (x, density) rows plus the name of the x column.
struct DensityCurve {
    std::string x_name;
    std::vector<std::pair<double, double>> rows;
};

DensityCurve run_density(const ExperimentConfig&);

void emit_density_csv(std::ostream&, const DensityCurve&);

std::vector<Dealing> run_deal(const ExperimentConfig&);

// Reads share rows `participant_index,share_component_index,value` and
// recovers (or, for the estimation schemes, conditionally estimates) the
// secret.
double run_recover(const ExperimentConfig&, std::istream& shares_csv);

// Deterministic parallel map-reduce over trials. Trials are cut into
// fixed-size blocks; any worker may run any block, but partial results are
// merged in block order, so the outcome is a pure function of (seed,
// trials) no matter how many threads run. per_trial must derive all
// randomness from the supplied per-trial stream.
template <typename Partial, typename PerTrial, typename Merge>
Partial accumulate_trials(long trials, int threads, std::uint64_t seed, Partial init,
                          PerTrial per_trial, Merge merge) {
    const long block = 8192;
    const long nblocks = (trials + block - 1) / block;
    if (threads < 1) threads = 1;
    std::vector<Partial> partials(static_cast<std::size_t>(nblocks), init);

    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;

    auto worker = [&]() {
        for (;;) {
            long b = next.fetch_add(1);
            if (b >= nblocks || failed.load()) return;
            try {
                Partial local = init;
                long lo = b * block;
                long hi = std::min(trials, lo + block);
                for (long t = lo; t < hi; ++t) {
                    Stream stream = substream(seed, static_cast<std::uint64_t>(t));
                    per_trial(local, t, stream);
                }
                partials[static_cast<std::size_t>(b)] = std::move(local);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!failed.exchange(true)) error = std::current_exception();
            }
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) std::rethrow_exception(error);

    Partial total = init;
    for (auto& p : partials) merge(total, p);
    return total;
}

} // namespace iss
