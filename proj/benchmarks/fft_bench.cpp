#include <benchmark/benchmark.h>

#include <random>

#include "latgen/fft.hpp"

using namespace latgen;

namespace {
std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}
}  // namespace

static void BM_FftPow2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto re = noise(n, 1);
  std::vector<Complex> x(re.begin(), re.end());
  for (auto _ : state) benchmark::DoNotOptimize(fft(x, Direction::forward));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FftPow2)->RangeMultiplier(4)->Range(1 << 8, 1 << 20)->Complexity(benchmark::oNLogN);

// Lengths N - 1 for primes N just below powers of two.
static void BM_FftBluestein(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto re = noise(n, 2);
  std::vector<Complex> x(re.begin(), re.end());
  for (auto _ : state) benchmark::DoNotOptimize(fft(x, Direction::forward));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FftBluestein)->Arg(1020)->Arg(4092)->Arg(16380)->Arg(65520)->Arg(262142)->Complexity(benchmark::oNLogN);

static void BM_CyclicConvolution(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = noise(n, 3), b = noise(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(cyclic_convolution(a, b));
}
BENCHMARK(BM_CyclicConvolution)->Arg(64)->Arg(1020)->Arg(4096)->Arg(16380)->Arg(65536);
