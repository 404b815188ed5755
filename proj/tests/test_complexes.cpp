#include <doctest.h>

#include <random>

#include "chp/complex.hpp"
#include "chp/smith.hpp"

using namespace chp;

namespace {

PolyMatrix pmat(const Ring& r, std::vector<std::vector<std::string>> rows) {
  return PolyMatrix::from_strings(rows, r);
}

std::vector<KDim> finite_dims(const CohomologyProfile& p) { return p.dims(); }

}  // namespace

TEST_CASE("make_complex accepts and rejects") {
  Ring r(3, 1, 'x');

  // 0 -> R -> R -> 0 with the identity
  CHECK_NOTHROW(make_complex(r, 0, {1, 1}, {PolyMatrix::identity(1, r)}));

  // x then x is not a complex
  PolyMatrix mx = pmat(r, {{"x0"}});
  CHECK_THROWS_AS(make_complex(r, 0, {1, 1, 1}, {mx, mx}), Error);

  // Koszul complex of (x, y) is accepted by construction
  Ring r2(3, 2, 'x');
  CHECK_NOTHROW(koszul_complex({parse_poly("x0", r2), parse_poly("x1", r2)}));
}

TEST_CASE("koszul examples") {
  Ring y1(3, 1, 'y');
  ChainComplex k1 = koszul_complex({parse_poly("y0", y1)});
  CHECK(k1.ranks() == std::vector<size_t>{1, 1});
  CHECK(k1.diff(0).at(0, 0) == parse_poly("y0", y1));

  // elements (2y), p=3: H^0 = 0, H^1 = k[y]/(y), dim 1
  ChainComplex k2 = koszul_complex({parse_poly("2*y0", y1)});
  CohomologyProfile p2 = cohomology_profile(k2);
  CHECK(p2.degrees[0].dim == KDim{true, 0, 0});
  CHECK(p2.degrees[1].dim == KDim{true, 1, 0});

  // regular sequence: cohomology concentrated at the top
  Ring y2(5, 2, 'y');
  ChainComplex k3 = koszul_complex({parse_poly("y0", y2), parse_poly("y1", y2)});
  CohomologyProfile p3 = cohomology_profile(k3);
  CHECK(p3.degrees[0].dim == KDim{true, 0, 0});
  CHECK(p3.degrees[1].dim == KDim{true, 0, 0});
  CHECK(p3.degrees[2].dim == KDim{true, 1, 0});
}

TEST_CASE("cohomology of the identity complex vanishes") {
  Ring r(5, 1, 'x');
  ChainComplex c = make_complex(r, 0, {1, 1}, {PolyMatrix::identity(1, r)});
  CohomologyProfile p = cohomology_profile(c);
  CHECK(p.degrees[0].dim == KDim{true, 0, 0});
  CHECK(p.degrees[1].dim == KDim{true, 0, 0});
}

TEST_CASE("cohomology of the A^1 p=3 pushforward is free of rank 1 twice") {
  Ring y(3, 1, 'y');
  PolyMatrix d0 = pmat(y, {{"0", "1", "0"}, {"0", "0", "2"}, {"0", "0", "0"}});
  ChainComplex c = make_complex(y, 0, {3, 3}, {d0});
  CohomologyProfile p = cohomology_profile(c);
  CHECK(!p.degrees[0].dim.finite);
  CHECK(p.degrees[0].free_rank == 1);
  CHECK(!p.degrees[1].dim.finite);
  CHECK(p.degrees[1].free_rank == 1);
  // H^1 is generated by the class of x^2 dx (basis vector 2)
  REQUIRE(p.degrees[1].generators.size() == 1);
  CHECK(p.degrees[1].generators[0] == ModuleVector::unit(y, 3, 2));
}

TEST_CASE("profile comparison verdicts") {
  CohomologyProfile a, b;
  a.lo = b.lo = 0;
  a.degrees = {{{true, 1, 0}, {}, {}}, {{true, 2, 0}, {}, {}}};
  b.degrees = {{{true, 1, 0}, {}, {}}, {{true, 2, 0}, {}, {}}};
  CHECK(compare_profiles(a, b) == ProfileComparison::equal);
  b.degrees[1].dim = {true, 1, 0};
  CHECK(compare_profiles(a, b) == ProfileComparison::first_dominates);
  a.degrees[0].dim = {true, 0, 0};
  CHECK(compare_profiles(a, b) == ProfileComparison::mixed);
}

TEST_CASE("euler characteristic is invariant under adding a trivial summand") {
  Ring y(3, 1, 'y');
  ChainComplex k = koszul_complex({parse_poly("2*y0", y)});
  CohomologyProfile p = cohomology_profile(k);
  auto chi = p.euler_characteristic();
  REQUIRE(chi.has_value());

  // direct sum with 0 -> R -> R -> 0 (identity block)
  PolyMatrix d(2, 2, y);
  d.at(0, 0) = k.diff(0).at(0, 0);
  d.at(1, 1) = Poly::constant(y, 1);
  ChainComplex sum = make_complex(y, 0, {2, 2}, {d});
  auto chi2 = cohomology_profile(sum).euler_characteristic();
  REQUIRE(chi2.has_value());
  CHECK(*chi == *chi2);
}

TEST_CASE("univariate profiles agree with the Smith oracle") {
  std::mt19937 rng(47);
  for (int t = 0; t < 12; ++t) {
    uint32_t p = (t % 2) ? 3 : 5;
    Ring y(p, 1, 'y');
    // random univariate Koszul complexes have d^2 = 0 for free
    std::vector<Poly> elems;
    size_t m = 1 + rng() % 2;
    for (size_t i = 0; i < m; ++i) {
      Poly f(y);
      uint32_t deg = rng() % 3;
      for (uint32_t d = 0; d <= deg; ++d) {
        Monomial mo(1);
        mo[0] = d;
        f.add_term(mo, rng() % p);
      }
      elems.push_back(f);
    }
    ChainComplex c = koszul_complex(elems);
    CohomologyProfile got = cohomology_profile(c);
    std::vector<PolyMatrix> diffs;
    for (int deg = c.lo(); deg < c.hi(); ++deg) diffs.push_back(c.diff(deg));
    auto oracle = smith_complex_profile(c.ranks(), diffs);
    REQUIRE(oracle.size() == got.degrees.size());
    for (size_t i = 0; i < oracle.size(); ++i) {
      if (oracle[i].finite()) {
        CHECK(got.degrees[i].dim.finite);
        CHECK(got.degrees[i].dim.dim == oracle[i].torsion_dim);
      } else {
        CHECK(!got.degrees[i].dim.finite);
        if (got.degrees[i].free_rank && oracle[i].torsion_dim == 0)
          CHECK(*got.degrees[i].free_rank == oracle[i].free_rank);
      }
    }
  }
}

TEST_CASE("serialization round trip preserves the complex and d*d = 0") {
  Ring y(3, 1, 'y');
  ChainComplex k = koszul_complex({parse_poly("y0^2 + 2*y0", y)});
  std::string text = complex_to_text(k);
  ChainComplex back = complex_from_text(text);  // re-verifies d*d = 0
  CHECK(back == k);

  Ring y2(3, 2, 'y');
  ChainComplex k2 = koszul_complex({parse_poly("y0", y2), parse_poly("y1^2", y2)});
  CHECK(complex_from_text(complex_to_text(k2)) == k2);
}
