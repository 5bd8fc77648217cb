#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "latgen/cbc.hpp"
#include "latgen/cbc_dbd.hpp"

using namespace latgen;

static void BM_CbcDbd(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto s = static_cast<std::size_t>(state.range(1));
  const auto w = inverse_square_weights(s);
  for (auto _ : state) benchmark::DoNotOptimize(construct_cbc_dbd(n, s, w));
  state.counters["N"] = static_cast<double>(u64{1} << n);
  state.SetComplexityN(static_cast<std::int64_t>(s) * (std::int64_t{1} << n) * n);
}
BENCHMARK(BM_CbcDbd)->ArgsProduct({{10, 12, 14, 16}, {50, 100, 200}})->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

static void BM_KorobovCbc(benchmark::State& state) {
  const u64 N = prev_prime(u64{1} << state.range(0));
  const auto s = static_cast<std::size_t>(state.range(1));
  const auto w = inverse_square_weights(s);
  for (auto _ : state) benchmark::DoNotOptimize(construct_korobov_cbc(N, s, w));
  state.counters["N"] = static_cast<double>(N);
}
BENCHMARK(BM_KorobovCbc)->ArgsProduct({{10, 12, 14, 16}, {50, 100}})->Unit(benchmark::kMillisecond);

static void BM_StandardCbcPrime(benchmark::State& state) {
  const u64 N = prev_prime(u64{1} << state.range(0));
  const auto w = power_weights(inverse_square_weights(100), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(construct_standard_cbc(N, 100, 2.0, w));
  state.counters["N"] = static_cast<double>(N);
}
BENCHMARK(BM_StandardCbcPrime)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);

static void BM_StandardCbcPow2(benchmark::State& state) {
  const u64 N = u64{1} << state.range(0);
  const auto w = power_weights(inverse_square_weights(100), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(construct_standard_cbc(N, 100, 2.0, w));
  state.counters["N"] = static_cast<double>(N);
}
BENCHMARK(BM_StandardCbcPow2)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);

static void BM_KorobovNaive(benchmark::State& state) {
  const u64 N = prev_prime(u64{1} << state.range(0));
  const auto w = inverse_square_weights(10);
  for (auto _ : state) benchmark::DoNotOptimize(construct_korobov_cbc(N, 10, w, CbcMode::naive));
}
BENCHMARK(BM_KorobovNaive)->DenseRange(8, 11)->Unit(benchmark::kMillisecond);
