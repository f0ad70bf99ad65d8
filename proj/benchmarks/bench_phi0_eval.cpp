#include <asymval/phi0.hpp>

#include <benchmark/benchmark.h>

using namespace asymval;

// Args: |z| times 8, bits
static void BM_phi0_eval(benchmark::State& state) {
  PrecisionContext ctx;
  ctx.bits = state.range(1);
  const double r = state.range(0) / 8.0;
  const Ball z(r * 0.6, r * 0.8, ctx.bits);
  for (auto _ : state) benchmark::DoNotOptimize(phi0_eval(z, ctx));
}
BENCHMARK(BM_phi0_eval)->ArgsProduct({{1, 8, 32, 96}, {64, 128, 256}})->Unit(benchmark::kMicrosecond);

static void BM_phi0_deriv(benchmark::State& state) {
  PrecisionContext ctx;
  const Ball z(1.5, -0.75, ctx.bits);
  for (auto _ : state) benchmark::DoNotOptimize(phi0_deriv(z, ctx));
}
BENCHMARK(BM_phi0_deriv)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
