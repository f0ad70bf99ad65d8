#include <asymval/evaluate.hpp>
#include <asymval/plan.hpp>
#include <asymval/targets.hpp>

#include <benchmark/benchmark.h>

using namespace asymval;

namespace {

const RayPlan& half_ray() {
  static const RayPlan ray = [] {
    const PrecisionContext ctx;
    return make_ray(select_target({mpq_class(1, 2), 0}), build_plan(GrowthSpec::power(1, 1), 4, ctx));
  }();
  return ray;
}

}  // namespace

static void BM_ray_table(benchmark::State& state) {
  const PrecisionContext ctx;
  const RayPlan& ray = half_ray();
  const double top = ray.plan.logR_at(4).to_double(Round::Down) - 0.125;
  std::vector<Real> grid;
  const auto rows = state.range(0);
  for (long i = 0; i < rows; ++i) grid.emplace_back(0.25 + (top - 0.25) * i / (rows - 1.0), 64);
  for (auto _ : state) benchmark::DoNotOptimize(ray_table(ray, grid, ctx));
}
BENCHMARK(BM_ray_table)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_lemma1(benchmark::State& state) {
  const PrecisionContext ctx;
  for (auto _ : state) benchmark::DoNotOptimize(lemma1_radius(half_ray(), 0.5, ctx));
}
BENCHMARK(BM_lemma1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
