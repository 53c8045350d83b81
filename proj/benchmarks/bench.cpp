#include <benchmark/benchmark.h>

#include <cmath>
#include <utility>
#include <vector>

#include "iss/numerics.hpp"
#include "iss/rng.hpp"
#include "iss/schemes_gauss.hpp"
#include "iss/schemes_stat.hpp"
#include "iss/schemes_wiener.hpp"

namespace {

void bm_normal_draw(benchmark::State& state) {
    iss::Stream rng(7, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(bm_normal_draw);

void bm_wrapped_density(benchmark::State& state) {
    double sigma = state.range(0) / 10.0;
    double x = 0.37;
    for (auto _ : state) {
        benchmark::DoNotOptimize(iss::wrapped_normal_density(x, sigma));
        x = x < 0.5 ? x + 1e-6 : 0.37;
    }
}
BENCHMARK(bm_wrapped_density)->Arg(3)->Arg(7)->Arg(20);

void bm_gauss_deal(benchmark::State& state) {
    int k = int(state.range(0));
    std::vector<double> labels;
    for (int i = 0; i < k; ++i) labels.push_back(1.5 + i);
    iss::GaussThresholdScheme sch = iss::make_gauss_threshold(k, 1.0, labels, false);
    iss::Stream rng(7, 0);
    for (auto _ : state) benchmark::DoNotOptimize(iss::gauss_deal(sch, rng));
}
BENCHMARK(bm_gauss_deal)->Arg(2)->Arg(4)->Arg(8);

void bm_wiener_path(benchmark::State& state) {
    int m = int(state.range(0));
    iss::Stream rng(7, 0);
    for (auto _ : state) benchmark::DoNotOptimize(iss::wiener_sample(m, rng));
}
BENCHMARK(bm_wiener_path)->Arg(1 << 10)->Arg(1 << 14);

void bm_dense_recover(benchmark::State& state) {
    std::vector<double> times;
    for (int j = 1; j <= 64; ++j) times.push_back(j / 64.0);
    iss::DenseScheme sch = iss::make_dense(1 << 10, times, 1.0 / 32);
    iss::Stream rng(7, 0);
    iss::WienerPath p = iss::wiener_sample(sch.M, rng);
    std::vector<std::pair<double, double>> obs;
    for (double t : times) obs.emplace_back(t, iss::path_value(p, t));
    for (auto _ : state) benchmark::DoNotOptimize(iss::dense_recover(sch, obs));
}
BENCHMARK(bm_dense_recover);

void bm_stat2_variance(benchmark::State& state) {
    std::vector<double> r;
    iss::Stream rng(7, 0);
    for (long i = 0; i < state.range(0); ++i) r.push_back(1.0 + 9.0 * rng.uniform01());
    for (auto _ : state) benchmark::DoNotOptimize(iss::stat2_variance(r));
}
BENCHMARK(bm_stat2_variance)->Arg(10)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
