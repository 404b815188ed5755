#include <benchmark/benchmark.h>

#include "chp/weyl.hpp"

using namespace chp;

static void BM_CenterMapDegree2(benchmark::State& state) {
  uint32_t p = static_cast<uint32_t>(state.range(0));
  Ring x(p, 2, 'x'), y(p, 2, 'y');
  VectorField theta(y);
  theta.coeffs[0] = parse_poly("y0^2 + y1", y);
  theta.coeffs[1] = parse_poly("y0*y1 + 2", y);
  for (auto _ : state) {
    WeylOp iota = center_map(theta, x);
    benchmark::DoNotOptimize(iota);
  }
}
BENCHMARK(BM_CenterMapDegree2)->Arg(2)->Arg(3)->Arg(5);

static void BM_TwistPower(benchmark::State& state) {
  Ring r(5, 1, 'x');
  Poly f = parse_poly("x0^3 + 2*x0", r);
  WeylOp dp = WeylOp::derivation(r, 0).pow(5);
  for (auto _ : state) {
    WeylOp t = twist_automorphism(f, dp);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_TwistPower);
