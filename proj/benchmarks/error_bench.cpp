#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "latgen/cbc_dbd.hpp"
#include "latgen/error.hpp"
#include "latgen/kernel.hpp"

using namespace latgen;

static void BM_WorstCaseError(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const double alpha = static_cast<double>(state.range(1));
  const auto w = inverse_square_weights(100);
  const auto z = construct_cbc_dbd(n, 100, w);
  const auto wa = power_weights(w, alpha);
  for (auto _ : state) benchmark::DoNotOptimize(worst_case_error(z, alpha, wa));
}
BENCHMARK(BM_WorstCaseError)->ArgsProduct({{10, 14}, {2, 3, 4}})->Unit(benchmark::kMicrosecond);

static void BM_FourierDecayTable(benchmark::State& state) {
  const u64 N = u64{1} << state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(fourier_decay_table(3.0, N));
}
BENCHMARK(BM_FourierDecayTable)->DenseRange(10, 16, 2)->Unit(benchmark::kMicrosecond);

static void BM_TruncatedDualSum(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto w = inverse_square_weights(20);
  const auto z = construct_cbc_dbd(n, 20, w);
  for (auto _ : state) benchmark::DoNotOptimize(truncated_dual_sum(z, w));
}
BENCHMARK(BM_TruncatedDualSum)->DenseRange(8, 14, 2)->Unit(benchmark::kMicrosecond);
