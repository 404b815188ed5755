// Acceptance suite: runs every paper-level criterion at its stated
// tolerance (exact arithmetic, so zero tolerance everywhere) and prints one
// pass/fail line per criterion.  Exit status is nonzero if any fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "chp/cech.hpp"
#include "chp/runner.hpp"
#include "chp/smith.hpp"
#include "chp/twisted.hpp"
#include "chp/version.hpp"
#include "oracles.hpp"

using namespace chp;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, bool ok, double ms) {
  std::printf("%s  criterion %2d: %s  (%.0f ms)\n", ok ? "PASS" : "FAIL", number,
              label.c_str(), ms);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <typename F>
void run_criterion(int number, const std::string& label, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = e.what();
    ok = false;
  }
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  criterion(number, label + (note.empty() ? "" : " [" + note + "]"), ok, ms);
}

Poly rand_poly(std::mt19937& rng, const Ring& r, uint32_t maxdeg) {
  std::vector<Monomial> monos;
  oracles::monomials_up_to(r, maxdeg, monos);
  Poly f(r);
  for (const auto& m : monos) f.add_term(m, rng() % r.p);
  return f;
}

// 1. Cartier matrix (A^1, p=3): H^0, H^1 free of rank 1; H^1 generated by
//    [x^2 dx]; Groebner profile equals the Smith oracle.
bool criterion_1() {
  AffineVariety a1 = AffineVariety::affine_space(1, 3);
  ChainComplex c = build_derham_pushforward(a1);
  CohomologyProfile p = cohomology_profile(c);
  if (!(p.degrees[0].free_rank == 1 && p.degrees[1].free_rank == 1)) return false;
  if (!(p.degrees[1].generators.size() == 1 &&
        p.degrees[1].generators[0] == ModuleVector::unit(c.ring(), 3, 2)))
    return false;  // [x^2 dx] is the third basis vector
  auto smith = smith_complex_profile(c.ranks(), {c.diff(0)});
  if (!(smith[0].free_rank == 1 && smith[0].torsion_dim == 0)) return false;
  if (!(smith[1].free_rank == 1 && smith[1].torsion_dim == 0)) return false;
  return cartier_verify(a1).pass;
}

// 2. Cartier sweep: (n, p) in {1,2} x {2,3,5}, H^q free of rank C(n,q).
bool criterion_2() {
  auto choose = [](uint32_t n, uint32_t q) {
    uint32_t r = 1;
    for (uint32_t i = 0; i < q; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  for (uint32_t n : {1u, 2u})
    for (uint32_t p : {2u, 3u, 5u}) {
      CartierReport r = cartier_verify(AffineVariety::affine_space(n, p));
      if (!r.pass) return false;
      for (uint32_t q = 0; q <= n; ++q)
        if (!(r.degrees[q].free_rank && *r.degrees[q].free_rank == choose(n, q)))
          return false;
    }
  return true;
}

// 3. psi-lemma: psi(d^p - d^[p]) = d^p - d^[p] - (df)^p on coordinate
//    fields, 20 random f per prime.
bool criterion_3() {
  for (uint32_t p : {2u, 3u, 5u}) {
    Ring r(p, 2, 'x');
    std::mt19937 rng(1000 + p);
    for (int t = 0; t < 20; ++t) {
      Poly f = rand_poly(rng, r, 3);
      for (size_t i = 0; i < 2; ++i) {
        WeylOp dp = WeylOp::derivation(r, i).pow(p);  // d^[p] = 0 here
        WeylOp rhs = dp - WeylOp::from_poly(partial_derivative(f, i).pow(p));
        if (!(twist_automorphism(f, dp) == rhs)) return false;
      }
    }
  }
  return true;
}

// 4. Centrality: [iota(theta'), x_i] = [iota(theta'), d_j] = 0 for 20
//    random vector fields per prime.
bool criterion_4() {
  for (uint32_t p : {2u, 3u, 5u}) {
    Ring x(p, 2, 'x'), y(p, 2, 'y');
    std::mt19937 rng(2000 + p);
    for (int t = 0; t < 20; ++t) {
      VectorField theta(y);
      for (size_t i = 0; i < 2; ++i) theta.coeffs[i] = rand_poly(rng, y, 2);
      WeylOp iota = center_map(theta, x);
      for (size_t i = 0; i < 2; ++i) {
        WeylOp xi = WeylOp::coordinate(x, i), di = WeylOp::derivation(x, i);
        if (!(weyl_mul(iota, xi) - weyl_mul(xi, iota)).is_zero()) return false;
        if (!(weyl_mul(iota, di) - weyl_mul(di, iota)).is_zero()) return false;
      }
    }
  }
  return true;
}

// 5. Obstruction sequence exactness for A^1, A^2 at p in {2,3}.
bool criterion_5() {
  for (uint32_t n : {1u, 2u})
    for (uint32_t p : {2u, 3u})
      if (!build_obstruction_sequence(AffineVariety::affine_space(n, p)).pass) return false;
  return true;
}

// 6. BK equality for quadratic superpotentials: profiles concentrated in
//    degree n with dimension 1, all three routes agreeing.
bool criterion_6() {
  for (uint32_t n : {1u, 2u})
    for (uint32_t p : {3u, 5u}) {
      Ring r(p, n, 'x');
      Poly f(r);
      for (uint32_t i = 0; i < n; ++i) f = f + parse_poly("x" + std::to_string(i) + "^2", r);
      BkData bk = bk_compare(Superpotential(f));
      if (!bk.hypotheses_hold || !bk.finite) return false;
      if (!bk.profiles_agree || !bk.predicted_agrees || !bk.euler_agrees) return false;
      for (uint32_t i = 0; i <= n; ++i) {
        KDim expect{true, i == n ? 1ull : 0ull, 0};
        if (!(bk.twisted.degrees[i].dim == expect)) return false;
        if (!(bk.wedge.degrees[i].dim == expect)) return false;
        if (!bk.predicted[i].applicable || !(bk.predicted[i].dim == expect)) return false;
      }
    }
  return true;
}

// 7. BK with positive-dimensional Z: f = x0^2 on A^2 at p=3; profiles agree
//    degreewise (recorded values; Z smooth and split).
bool criterion_7() {
  Ring r(3, 2, 'x');
  BkData bk = bk_compare(Superpotential(parse_poly("x0^2", r)));
  if (!(bk.locus.smooth && bk.locus.split && bk.locus.dim == 1 && bk.locus.codim == 1))
    return false;
  if (!bk.profiles_agree) return false;
  // degree 0 vanishes; degrees 1 and 2 are infinite on both sides
  if (!(bk.twisted.degrees[0].dim == KDim{true, 0, 0})) return false;
  if (bk.twisted.degrees[1].dim.finite || bk.twisted.degrees[2].dim.finite) return false;
  if (bk.wedge.degrees[1].dim.finite || bk.wedge.degrees[2].dim.finite) return false;
  return true;
}

// 8. L-support: p-curvature of L at each coordinate field equals
//    -(d_i f)^p, matching the graph equations of df'.
bool criterion_8() {
  for (uint32_t p : {2u, 3u}) {
    for (const std::string& ftext : {std::string("0"), std::string("x0^2")}) {
      Ring r(p, 1, 'x');
      if (!verify_L_support(Superpotential(parse_poly(ftext, r))).pass) return false;
    }
    Ring r2(p, 2, 'x');
    if (!verify_L_support(Superpotential(parse_poly("x0*x1", r2))).pass) return false;
  }
  return true;
}

// 9. Projective degeneration: P^1 at p <= 7, the elliptic cubic over F_5,
//    the smooth quartic over F_7, all with agreeing stabilization windows.
bool criterion_9() {
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    DegenerationReport d = degeneration_check(CechTarget::projective_space(1, p));
    if (!d.cech.stabilized || !d.pass) return false;
    if (!(d.cech.window[0].derham == std::vector<uint64_t>{1, 0, 1})) return false;
  }
  {
    Ring r(5, 3, 'x');
    PlaneCurve cubic = PlaneCurve::make(parse_poly("x0^3 + x1^3 + x2^3 - x0*x1*x2", r));
    DegenerationReport d = degeneration_check(CechTarget::plane_curve(cubic));
    if (!d.cech.stabilized || !d.pass) return false;
    const HodgeTable& h = d.cech.window[0].hodge;
    if (!(h[0][0] == 1 && h[0][1] == 1 && h[1][0] == 1 && h[1][1] == 1)) return false;
    if (!(d.cech.window[0].derham == std::vector<uint64_t>{1, 2, 1, 0})) return false;
  }
  {
    Ring r(7, 3, 'x');
    PlaneCurve quartic = PlaneCurve::make(parse_poly("x0^4 + x1^4 + x2^4", r));
    DegenerationReport d = degeneration_check(CechTarget::plane_curve(quartic));
    if (!d.cech.stabilized || !d.pass) return false;
    if (d.cech.window[0].derham[1] != 6) return false;
    if (d.hodge_sums[1] != 6) return false;
  }
  return true;
}

// 10. Engine cross-validation: 50 random univariate maps against the Smith
//     oracle; 50 random multivariate quotients against truncated rref.
bool criterion_10() {
  std::mt19937 rng(777);
  // univariate: Groebner cokernel dimension = Smith dimension
  int done = 0;
  while (done < 50) {
    uint32_t p = (done % 2) ? 3 : 5;
    Ring y(p, 1, 'y');
    size_t n = 2 + rng() % 2;
    PolyMatrix m(n, n, y);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Poly f(y);
        for (uint32_t d = 0; d <= rng() % 3; ++d) {
          Monomial mo(1);
          mo[0] = d;
          f.add_term(mo, rng() % p);
        }
        m.at(i, j) = f;
      }
    SmithForm s = smith_normal_form(m);
    CokernelShape shape = cokernel_shape(s);
    if (!shape.finite()) continue;  // want nonsingular samples
    ++done;
    std::vector<ModuleVector> cols;
    for (size_t j = 0; j < n; ++j) cols.emplace_back(y, m.column(j));
    GroebnerBasis gb = module_groebner(y, n, cols);
    KDim dim = quotient_k_dimension(n, gb);
    if (!dim.finite || dim.dim != shape.torsion_dim) return false;
  }

  // multivariate: Groebner dimension = truncated rref brute force
  int checked = 0, attempts = 0;
  while (checked < 50 && attempts < 400) {
    ++attempts;
    uint32_t p = (attempts % 2) ? 3 : 5;
    uint32_t nv = 1 + attempts % 3;
    Ring r(p, nv, 'x');
    size_t rank = 1 + rng() % 4;
    std::vector<ModuleVector> gens;
    for (size_t i = 0; i < 2 + rng() % 3; ++i) {
      ModuleVector v(r, rank);
      std::vector<Monomial> monos;
      oracles::monomials_up_to(r, 1 + rng() % 4, monos);
      for (size_t pos = 0; pos < rank; ++pos)
        for (const auto& mo : monos)
          if (rng() % 3 == 0) v[pos].add_term(mo, rng() % p);
      if (!v.is_zero()) gens.push_back(v);
    }
    if (gens.empty()) continue;
    GroebnerBasis gb = module_groebner(r, rank, gens);
    KDim dim = quotient_k_dimension(rank, gb);
    const uint32_t d_count = 8;
    auto a = oracles::brute_force_standard_table(r, rank, gens, d_count, 12);
    auto b = oracles::brute_force_standard_table(r, rank, gens, d_count, 14);
    if (a != b) continue;  // oracle window not settled, resample
    if (a != truncated_dim_table(rank, gb, d_count)) return false;
    if (dim.finite && a[d_count] == a[d_count - 1] && a[d_count] != dim.dim) return false;
    ++checked;
  }
  return checked == 50;
}

// 11. Determinism/replay: `--suite paper` twice (cold then warm cache),
//     identical jsonlines modulo timing fields, exit code 0.
bool criterion_11() {
  const char* lab = std::getenv("LAB_BIN");
  if (!lab || !*lab) {
    std::fprintf(stderr, "  criterion 11: LAB_BIN not set; skipping subprocess replay\n");
    return false;
  }
  std::string cache = "acceptance_cache_dir";
  auto run_once = [&](const std::string& out) {
    std::string cmd = std::string(lab) + " run --suite paper --format jsonlines --cache " +
                      cache + " --out " + out;
    return std::system(cmd.c_str());
  };
  std::string out1 = "acceptance_suite_run1.jsonl", out2 = "acceptance_suite_run2.jsonl";
  std::filesystem::remove_all(cache);
  int rc1 = run_once(out1);  // cold cache
  int rc2 = run_once(out2);  // warm cache
  std::filesystem::remove_all(cache);
  if (rc1 != 0 || rc2 != 0) return false;
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  std::string a = strip_runtime_fields(slurp(out1));
  std::string b = strip_runtime_fields(slurp(out2));
  std::remove(out1.c_str());
  std::remove(out2.c_str());
  return !a.empty() && a == b;
}

}  // namespace

int main() {
  std::printf("chp-lab acceptance suite (engine %s)\n", kEngineVersion);
  run_criterion(1, "Cartier matrix A^1 p=3: free ranks, generator, Smith oracle",
                criterion_1);
  run_criterion(2, "Cartier sweep (n,p) in {1,2}x{2,3,5}: H^q free of rank C(n,q)",
                criterion_2);
  run_criterion(3, "psi-lemma identity, 20 random f per p in {2,3,5}", criterion_3);
  run_criterion(4, "centrality of iota on 20 random fields per p in {2,3,5}", criterion_4);
  run_criterion(5, "obstruction sequence exact for A^1, A^2 at p in {2,3}", criterion_5);
  run_criterion(6, "BK equality for quadratic superpotentials", criterion_6);
  run_criterion(7, "BK with positive-dimensional critical locus (f=x0^2 on A^2, p=3)",
                criterion_7);
  run_criterion(8, "L-support: p-curvature matches the graph of df'", criterion_8);
  run_criterion(9, "projective degeneration: P^1, elliptic cubic /F5, quartic /F7",
                criterion_9);
  run_criterion(10, "engine cross-validation vs Smith and truncated rref", criterion_10);
  run_criterion(11, "determinism/replay of --suite paper", criterion_11);

  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all 11 criteria passed\n");
  return failures ? 1 : 0;
}
