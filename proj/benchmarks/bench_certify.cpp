#include <asymval/certify.hpp>

#include <benchmark/benchmark.h>

using namespace asymval;

static void BM_certify_K(benchmark::State& state) {
  const PrecisionContext ctx;
  for (auto _ : state) benchmark::DoNotOptimize(certify_K(RationalAngle(511, 4096), ctx));
}
BENCHMARK(BM_certify_K)->Unit(benchmark::kMillisecond);

static void BM_certify_H(benchmark::State& state) {
  const PrecisionContext ctx;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(certify_H(n, RationalAngle(1, 16 * n), ctx));
}
BENCHMARK(BM_certify_H)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_find_alphas(benchmark::State& state) {
  const PrecisionContext ctx;
  for (auto _ : state) benchmark::DoNotOptimize(find_alphas(static_cast<int>(state.range(0)), ctx));
}
BENCHMARK(BM_find_alphas)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
