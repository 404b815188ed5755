#include <benchmark/benchmark.h>

#include "chp/twisted.hpp"

using namespace chp;

static void BM_TwistedCohomologyQuadraticA2(benchmark::State& state) {
  uint32_t p = static_cast<uint32_t>(state.range(0));
  Ring r(p, 2, 'x');
  Superpotential f(parse_poly("x0^2 + x1^2", r));
  for (auto _ : state) {
    CohomologyProfile prof = cohomology_profile(build_twisted_pushforward(f));
    benchmark::DoNotOptimize(prof);
  }
}
BENCHMARK(BM_TwistedCohomologyQuadraticA2)->Arg(3)->Arg(5);

static void BM_KernelOfKoszulMap(benchmark::State& state) {
  Ring r(5, 3, 'x');
  PolyMatrix m = PolyMatrix::from_strings({{"x0", "x1", "x2"}}, r);
  for (auto _ : state) {
    auto ker = kernel_of_map(m);
    benchmark::DoNotOptimize(ker);
  }
}
BENCHMARK(BM_KernelOfKoszulMap);

static void BM_QuotientDimension(benchmark::State& state) {
  Ring r(5, 3, 'x');
  std::vector<ModuleVector> gens;
  for (const char* s : {"x0^3", "x1^3", "x2^3", "x0*x1*x2"})
    gens.emplace_back(r, std::vector<Poly>{parse_poly(s, r)});
  for (auto _ : state) {
    GroebnerBasis gb = module_groebner(r, 1, gens);
    benchmark::DoNotOptimize(quotient_k_dimension(1, gb));
  }
}
BENCHMARK(BM_QuotientDimension);
