#include <benchmark/benchmark.h>

#include "chp/cech.hpp"

using namespace chp;

static void BM_P1Derham(benchmark::State& state) {
  CechTarget t = CechTarget::projective_space(1, 5);
  for (auto _ : state) {
    CechResult r = compute_cech(t);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_P1Derham);

static void BM_EllipticCubicSnapshot(benchmark::State& state) {
  Ring r(5, 3, 'x');
  PlaneCurve cubic = PlaneCurve::make(parse_poly("x0^3 + x1^3 + x2^3 - x0*x1*x2", r));
  CechTarget t = CechTarget::plane_curve(cubic);
  CechConfig cfg;
  cfg.truncation = static_cast<uint32_t>(state.range(0));
  cfg.window = 2;
  for (auto _ : state) {
    CechResult res = compute_cech(t, cfg);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_EllipticCubicSnapshot)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
