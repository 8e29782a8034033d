#include <benchmark/benchmark.h>

#include "iipg/case_study.hpp"
#include "iipg/guidance.hpp"
#include "iipg/sim.hpp"

namespace {

using namespace iipg;

void BM_Predict(benchmark::State& st) {
  const EarthModel earth = case_study::earth();
  const StateVector s = case_study::initial_state();
  for (auto _ : st) benchmark::DoNotOptimize(predict(s, earth));
}
BENCHMARK(BM_Predict);

void BM_RateBasis(benchmark::State& st) {
  const EarthModel earth = case_study::earth();
  const StateVector s = case_study::initial_state();
  const ImpactPrediction p = predict(s, earth);
  for (auto _ : st) benchmark::DoNotOptimize(compute_rate_basis(s, p, earth));
}
BENCHMARK(BM_RateBasis);

void BM_SolvePcg(benchmark::State& st) {
  const Vec3 c(0.3, -1.2, 0.7);
  const Vec3 f(-0.5, 0.1, 0.9);
  for (auto _ : st) benchmark::DoNotOptimize(solve_pcg(c, f, 30.0));
}
BENCHMARK(BM_SolvePcg);

void BM_GuidanceStep(benchmark::State& st) {
  const Scenario sc = case_study::scenario(4);
  const double a_m = sc.vehicle.thrust / sc.initial.m;
  for (auto _ : st) benchmark::DoNotOptimize(guidance_step(sc.initial, sc.target, a_m, sc.earth));
}
BENCHMARK(BM_GuidanceStep);

void BM_ClosedLoopCase4(benchmark::State& st) {
  const Scenario sc = case_study::scenario(4);
  for (auto _ : st) benchmark::DoNotOptimize(run_closed_loop(sc));
}
BENCHMARK(BM_ClosedLoopCase4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
