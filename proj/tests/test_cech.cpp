#include <doctest.h>

#include "chp/cech.hpp"

using namespace chp;

namespace {

PlaneCurve curve(uint32_t p, const std::string& g) {
  return PlaneCurve::make(parse_poly(g, Ring(p, 3, 'x')));
}

}  // namespace

TEST_CASE("grid sanity: differentials square to zero and anticommute") {
  CHECK(cech_grid_identities_ok(CechTarget::projective_space(1, 3), 3));
  CHECK(cech_grid_identities_ok(CechTarget::projective_space(2, 2), 3));
  CHECK(cech_grid_identities_ok(CechTarget::plane_curve(curve(5, "x0^3 + x1^3 + x2^3 - x0*x1*x2")), 5));
}

TEST_CASE("P^1 Hodge numbers and de Rham dimensions") {
  for (uint32_t p : {2u, 3u, 5u, 7u}) {
    CechTarget t = CechTarget::projective_space(1, p);
    HodgeTable h = hodge_numbers(t);
    CHECK(h[0][0] == 1);  // h^0(O)
    CHECK(h[0][1] == 0);  // h^1(O)
    CHECK(h[1][0] == 0);  // h^0(Omega^1)
    CHECK(h[1][1] == 1);  // h^1(Omega^1)
    CHECK(derham_hypercohomology(t) == std::vector<uint64_t>{1, 0, 1});
    DegenerationReport d = degeneration_check(t);
    CHECK(d.pass);
    CHECK(!d.internal_inconsistency);
  }
}

TEST_CASE("P^2 Hodge diagonal and de Rham dimensions") {
  CechTarget t = CechTarget::projective_space(2, 3);
  HodgeTable h = hodge_numbers(t);
  for (size_t q = 0; q < 3; ++q)
    for (size_t k = 0; k < 3; ++k) CHECK(h[q][k] == (q == k ? 1u : 0u));
  CHECK(derham_hypercohomology(t) == std::vector<uint64_t>{1, 0, 1, 0, 1});
  CHECK(degeneration_check(t).pass);
}

TEST_CASE("elliptic cubic over F_5") {
  CechTarget t = CechTarget::plane_curve(curve(5, "x0^3 + x1^3 + x2^3 - x0*x1*x2"));
  HodgeTable h = hodge_numbers(t);
  CHECK(h[0][0] == 1);
  CHECK(h[0][1] == 1);
  CHECK(h[1][0] == 1);
  CHECK(h[1][1] == 1);
  CHECK(h[0][2] == 0);
  CHECK(h[1][2] == 0);
  CHECK(derham_hypercohomology(t) == std::vector<uint64_t>{1, 2, 1, 0});
  CHECK(degeneration_check(t).pass);
}

TEST_CASE("euler characteristics of the grid agree unconditionally") {
  for (auto t : {CechTarget::projective_space(1, 3), CechTarget::projective_space(2, 2)}) {
    CechResult r = compute_cech(t);
    REQUIRE(r.stabilized);
    const CechSnapshot& s = r.window[0];
    int64_t chi_h = 0;
    for (size_t q = 0; q < s.hodge.size(); ++q)
      for (size_t k = 0; k < s.hodge[q].size(); ++k)
        chi_h += ((q + k) % 2 == 0 ? 1 : -1) * static_cast<int64_t>(s.hodge[q][k]);
    int64_t chi_dr = 0;
    for (size_t i = 0; i < s.derham.size(); ++i)
      chi_dr += (i % 2 == 0 ? 1 : -1) * static_cast<int64_t>(s.derham[i]);
    CHECK(chi_h == chi_dr);
  }
}

TEST_CASE("degeneration inequality direction") {
  // dim H^i_dR <= sum of Hodge numbers in every run
  DegenerationReport d =
      degeneration_check(CechTarget::plane_curve(curve(3, "x0^3 + x1^3 + x2^3 - x0*x1*x2")));
  REQUIRE(d.cech.stabilized);
  for (size_t i = 0; i < d.cech.window[0].derham.size(); ++i)
    CHECK(d.cech.window[0].derham[i] <= d.hodge_sums[i]);
}

TEST_CASE("window dimensions are monotone non-increasing on P^1") {
  CechConfig small;
  small.truncation = 2;
  small.window = 4;
  CechResult r = compute_cech(CechTarget::projective_space(1, 3), small);
  for (size_t w = 1; w < r.window.size(); ++w)
    for (size_t i = 0; i < r.window[w].derham.size(); ++i)
      CHECK(r.window[w].derham[i] <= r.window[w - 1].derham[i]);
}

TEST_CASE("unstabilized windows are reported as such") {
  // truncation 1 is far below what the cubic needs
  CechConfig tiny;
  tiny.truncation = 1;
  CechTarget t = CechTarget::plane_curve(curve(5, "x0^3 + x1^3 + x2^3 - x0*x1*x2"));
  CechResult r = compute_cech(t, tiny);
  if (!r.stabilized) {
    CHECK_THROWS_AS(hodge_numbers(t, tiny), Error);
  }
}

TEST_CASE("singular curves are rejected") {
  Ring r(5, 3, 'x');
  // cuspidal cubic zy^2 = x^3
  CHECK_THROWS_AS(PlaneCurve::make(parse_poly("x1^2*x2 - x0^3", r)), Error);
  // inhomogeneous input
  CHECK_THROWS_AS(PlaneCurve::make(parse_poly("x0^2 + x1", r)), Error);
}

TEST_CASE("smooth quartic over F_7 has H^1_dR = 6") {
  CechTarget t = CechTarget::plane_curve(curve(7, "x0^4 + x1^4 + x2^4"));
  DegenerationReport d = degeneration_check(t);
  REQUIRE(d.cech.stabilized);
  CHECK(d.cech.window[0].derham[1] == 6);
  CHECK(d.hodge_sums[1] == 6);  // 3 + 3
  CHECK(d.pass);
}
