// Serial reference vs OpenMP kernels, and the replicate grid both ways.
// Run with OMP_NUM_THREADS to vary the worker count.

#include <benchmark/benchmark.h>

#include "fghs/harness.hpp"
#include "fghs/kernels.hpp"
#include "fghs/rngdist.hpp"

namespace {

fghs::Matrix random_data(Eigen::Index n, Eigen::Index p) {
  fghs::RngStream rng(7, 0);
  fghs::Matrix y(n, p);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j) y(i, j) = rng.normal();
  return y;
}

void BM_ScatterSerial(benchmark::State& state) {
  const auto y = random_data(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(fghs::kernels::scatter_serial(y));
}

void BM_ScatterParallel(benchmark::State& state) {
  const auto y = random_data(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(fghs::kernels::scatter_parallel(y));
}

void BM_FrobeniusSerial(benchmark::State& state) {
  const auto a = random_data(state.range(0), state.range(0));
  const auto b = random_data(state.range(0), state.range(0)) * 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(fghs::kernels::frobenius_sq_serial(a, b));
}

void BM_FrobeniusParallel(benchmark::State& state) {
  const auto a = random_data(state.range(0), state.range(0));
  const auto b = random_data(state.range(0), state.range(0)) * 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(fghs::kernels::frobenius_sq_parallel(a, b));
}

fghs::GridOptions small_grid() {
  fghs::GridOptions opts;
  opts.n_iter = 60;
  opts.burn_in = 10;
  return opts;
}

void BM_GridSerial(benchmark::State& state) {
  const auto scn = fghs::table1_dense(false);
  for (auto _ : state)
    benchmark::DoNotOptimize(fghs::run_grid_serial({scn}, {1.0, 0.5}, 4, small_grid()));
}

void BM_GridParallel(benchmark::State& state) {
  const auto scn = fghs::table1_dense(false);
  for (auto _ : state)
    benchmark::DoNotOptimize(fghs::run_grid({scn}, {1.0, 0.5}, 4, small_grid()));
}

}  // namespace

BENCHMARK(BM_ScatterSerial)->Args({30, 100})->Args({1000, 200});
BENCHMARK(BM_ScatterParallel)->Args({30, 100})->Args({1000, 200});
BENCHMARK(BM_FrobeniusSerial)->Arg(100)->Arg(1000);
BENCHMARK(BM_FrobeniusParallel)->Arg(100)->Arg(1000);
BENCHMARK(BM_GridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
