#include <asymval/plan.hpp>

#include <benchmark/benchmark.h>

using namespace asymval;

static void BM_build_plan(benchmark::State& state, const char* growth) {
  const PrecisionContext ctx;
  const GrowthSpec g = GrowthSpec::parse(growth);
  const int levels = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_plan(g, levels, ctx));
}
BENCHMARK_CAPTURE(BM_build_plan, pow11, "pow:1,1")->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_build_plan, afflog41, "afflog:4,1")->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
