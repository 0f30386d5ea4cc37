#include <benchmark/benchmark.h>

#include "stirap/runner.hpp"

using namespace stirap;

static void BM_FullLinearLambda(benchmark::State& state) {
  const ScenarioConfig c = preset("fig2");
  const PulseSchedule s = c.schedule();
  const SystemParams p = c.params();
  IntegrationOptions opt;
  opt.step = c.effective_step();
  opt.t0 = c.t0;
  opt.t1 = c.t1;
  for (auto _ : state) {
    auto rhs = [&](double t, const CVec& y) { return bare_rhs(p, s, t, y); };
    benchmark::DoNotOptimize(integrate(rhs, CVec{1.0, 0.0, 0.0}, opt));
  }
}
BENCHMARK(BM_FullLinearLambda);

static void BM_FullNonlinearTripod(benchmark::State& state) {
  const ScenarioConfig c = preset("fig9");
  const PulseSchedule s = c.schedule();
  const SystemParams p = c.params();
  IntegrationOptions opt;
  opt.step = c.effective_step();
  opt.t0 = c.t0;
  opt.t1 = c.t1;
  for (auto _ : state) {
    auto rhs = [&](double t, const CVec& y) { return bare_rhs(p, s, t, y); };
    benchmark::DoNotOptimize(integrate(rhs, CVec{1.0, 0.0, 0.0, 0.0}, opt));
  }
}
BENCHMARK(BM_FullNonlinearTripod);

static void BM_DarkManifold(benchmark::State& state) {
  const ScenarioConfig c = preset("fig9");
  const PulseSchedule s = c.schedule();
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_dark_manifold(s, c.t0, c.t1, c.effective_step()));
}
BENCHMARK(BM_DarkManifold);

static void BM_EigenTrace(benchmark::State& state) {
  const ScenarioConfig c = preset("fig4");
  const PulseSchedule s = c.schedule();
  const SystemParams p = c.params();
  for (auto _ : state)
    benchmark::DoNotOptimize(eigen_trace(p, s, c.t0, c.t1, 2001));
}
BENCHMARK(BM_EigenTrace);

static void BM_StageBoundaries(benchmark::State& state) {
  const ScenarioConfig c = preset("fig4");
  const PulseSchedule s = c.schedule();
  const SystemParams p = c.params();
  for (auto _ : state)
    benchmark::DoNotOptimize(stage_boundaries(p, s, c.t0, c.t1));
}
BENCHMARK(BM_StageBoundaries);

static void BM_ReducedTripodChain(benchmark::State& state) {
  ScenarioConfig c = preset("fig5");
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(c));
}
BENCHMARK(BM_ReducedTripodChain);

BENCHMARK_MAIN();
