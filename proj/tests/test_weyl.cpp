#include <doctest.h>

#include <random>

#include "chp/weyl.hpp"
#include "oracles.hpp"

using namespace chp;

namespace {

Poly rand_poly(std::mt19937& rng, const Ring& r, uint32_t maxdeg) {
  std::vector<Monomial> monos;
  oracles::monomials_up_to(r, maxdeg, monos);
  Poly f(r);
  for (const auto& m : monos) f.add_term(m, rng() % r.p);
  return f;
}

WeylOp rand_op(std::mt19937& rng, const Ring& r, uint32_t xdeg, uint32_t ddeg) {
  std::vector<Monomial> xs, ds;
  oracles::monomials_up_to(r, xdeg, xs);
  oracles::monomials_up_to(r, ddeg, ds);
  WeylOp a(r);
  for (const auto& x : xs)
    for (const auto& d : ds)
      if (rng() % 4 == 0) a.add_term(x, d, rng() % r.p);
  return a;
}

}  // namespace

TEST_CASE("weyl relations") {
  Ring r(5, 1, 'x');
  WeylOp x = WeylOp::coordinate(r, 0);
  WeylOp d = WeylOp::derivation(r, 0);

  // d x = x d + 1
  CHECK(weyl_mul(d, x) == weyl_mul(x, d) + WeylOp::constant(r, 1));

  // d^p is central: [d^p, x] = 0
  WeylOp dp = d.pow(5);
  CHECK((weyl_mul(dp, x) - weyl_mul(x, dp)).is_zero());
}

TEST_CASE("(d - 2x)^3 = d^3 + x^3 in char 3") {
  Ring r(3, 1, 'x');
  WeylOp a = parse_weyl("d0 - 2*x0", r);
  WeylOp expect = parse_weyl("d0^3 + x0^3", r);
  CHECK(a.pow(3) == expect);
}

TEST_CASE("apply operator examples") {
  Ring r(3, 1, 'x');
  Poly x2 = parse_poly("x0^2", r);
  CHECK(apply_operator(WeylOp::derivation(r, 0), x2) == parse_poly("2*x0", r));
  CHECK(apply_operator(parse_weyl("x0*d0", r), parse_poly("x0", r)) == parse_poly("x0", r));
  // d^3 kills everything in char 3
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    Poly g = rand_poly(rng, r, 6);
    CHECK(apply_operator(parse_weyl("d0^3", r), g).is_zero());
  }
}

TEST_CASE("apply is an algebra action") {
  std::mt19937 rng(11);
  for (uint32_t p : {2u, 3u}) {
    Ring r(p, 2, 'x');
    for (int t = 0; t < 10; ++t) {
      WeylOp a = rand_op(rng, r, 2, 1), b = rand_op(rng, r, 2, 1);
      Poly g = rand_poly(rng, r, 3);
      CHECK(apply_operator(weyl_mul(a, b), g) == apply_operator(a, apply_operator(b, g)));
    }
  }
}

TEST_CASE("weyl multiplication is associative") {
  std::mt19937 rng(13);
  for (uint32_t p : {2u, 3u, 5u}) {
    Ring r(p, 2, 'x');
    for (int t = 0; t < 8; ++t) {
      WeylOp a = rand_op(rng, r, 1, 1), b = rand_op(rng, r, 1, 1), c = rand_op(rng, r, 1, 1);
      CHECK(weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c)));
    }
  }
}

TEST_CASE("restricted power examples") {
  {
    Ring r(3, 1, 'x');
    VectorField d(r);
    d.coeffs[0] = Poly::constant(r, 1);
    CHECK(restricted_power(d).is_zero());

    VectorField xd(r);
    xd.coeffs[0] = Poly::variable(r, 0);
    VectorField res = restricted_power(xd);
    CHECK(res.coeffs[0] == Poly::variable(r, 0));  // (x d)^[3] = x d
  }
  {
    Ring r(2, 1, 'x');
    VectorField x2d(r);
    x2d.coeffs[0] = parse_poly("x0^2", r);
    CHECK(restricted_power(x2d).is_zero());
  }
}

TEST_CASE("restricted power acts like theta^p on random functions") {
  std::mt19937 rng(17);
  for (uint32_t p : {2u, 3u}) {
    Ring r(p, 2, 'x');
    for (int t = 0; t < 6; ++t) {
      VectorField theta(r);
      for (size_t i = 0; i < 2; ++i) theta.coeffs[i] = rand_poly(rng, r, 2);
      WeylOp op = theta.as_operator();
      VectorField rp = restricted_power(theta);
      Poly g = rand_poly(rng, r, 3);
      Poly via_power = g;
      for (uint32_t i = 0; i < p; ++i) via_power = apply_operator(op, via_power);
      CHECK(apply_operator(rp.as_operator(), g) == via_power);
    }
  }
}

TEST_CASE("center map examples") {
  {
    Ring x(3, 1, 'x'), y(3, 1, 'y');
    VectorField dprime(y);
    dprime.coeffs[0] = Poly::constant(y, 1);
    WeylOp iota = center_map(dprime, x);
    CHECK(iota == parse_weyl("d0^3", x));
    WeylOp xc = WeylOp::coordinate(x, 0);
    CHECK((weyl_mul(iota, xc) - weyl_mul(xc, iota)).is_zero());
  }
  {
    // y d', p = 2: iota = (x^2 d)^2 - (x^2 d)^[2] = x^4 d^2, central
    Ring x(2, 1, 'x'), y(2, 1, 'y');
    VectorField theta(y);
    theta.coeffs[0] = Poly::variable(y, 0);
    WeylOp iota = center_map(theta, x);
    CHECK(iota == parse_weyl("x0^4*d0^2", x));
    WeylOp xc = WeylOp::coordinate(x, 0);
    WeylOp dc = WeylOp::derivation(x, 0);
    CHECK((weyl_mul(iota, xc) - weyl_mul(xc, iota)).is_zero());
    CHECK((weyl_mul(iota, dc) - weyl_mul(dc, iota)).is_zero());
  }
}

TEST_CASE("centrality on random twisted fields") {
  std::mt19937 rng(19);
  for (uint32_t p : {2u, 3u, 5u}) {
    Ring x(p, 2, 'x'), y(p, 2, 'y');
    for (int t = 0; t < 5; ++t) {
      VectorField theta(y);
      for (size_t i = 0; i < 2; ++i) theta.coeffs[i] = rand_poly(rng, y, 2);
      WeylOp iota = center_map(theta, x);
      for (size_t i = 0; i < 2; ++i) {
        WeylOp xi = WeylOp::coordinate(x, i), di = WeylOp::derivation(x, i);
        CHECK((weyl_mul(iota, xi) - weyl_mul(xi, iota)).is_zero());
        CHECK((weyl_mul(iota, di) - weyl_mul(di, iota)).is_zero());
      }
    }
  }
}

TEST_CASE("twist automorphism examples") {
  Ring r(3, 1, 'x');
  Poly f = parse_poly("x0^2", r);
  CHECK(twist_automorphism(f, WeylOp::coordinate(r, 0)) == WeylOp::coordinate(r, 0));
  CHECK(twist_automorphism(f, WeylOp::derivation(r, 0)) == parse_weyl("d0 - 2*x0", r));
  // psi(d^p) = d^p - (df)^p with d^[p] = 0 for coordinate fields
  CHECK(twist_automorphism(f, parse_weyl("d0^3", r)) == parse_weyl("d0^3 + x0^3", r));
}

TEST_CASE("twist is an automorphism with inverse twist by -f") {
  std::mt19937 rng(23);
  for (uint32_t p : {2u, 3u}) {
    Ring r(p, 2, 'x');
    for (int t = 0; t < 6; ++t) {
      Poly f = rand_poly(rng, r, 3);
      WeylOp a = rand_op(rng, r, 1, 1), b = rand_op(rng, r, 1, 1);
      CHECK(twist_automorphism(f, weyl_mul(a, b)) ==
            weyl_mul(twist_automorphism(f, a), twist_automorphism(f, b)));
      CHECK(twist_automorphism(-f, twist_automorphism(f, a)) == a);
    }
  }
}

TEST_CASE("psi-lemma for coordinate fields") {
  std::mt19937 rng(29);
  for (uint32_t p : {2u, 3u, 5u}) {
    Ring r(p, 2, 'x');
    for (int t = 0; t < 20; ++t) {
      Poly f = rand_poly(rng, r, 3);
      for (size_t i = 0; i < 2; ++i) {
        WeylOp dp = WeylOp::derivation(r, i).pow(p);
        WeylOp rhs = dp - WeylOp::from_poly(partial_derivative(f, i).pow(p));
        CHECK(twist_automorphism(f, dp) == rhs);
      }
    }
  }
}

TEST_CASE("p-curvature examples") {
  {
    Ring r(3, 2, 'x');
    Connection triv = Connection::trivial(r, 2);
    std::mt19937 rng(31);
    VectorField theta(r);
    for (size_t i = 0; i < 2; ++i) theta.coeffs[i] = rand_poly(rng, r, 2);
    CHECK(p_curvature(triv, theta).is_zero());
  }
  {
    // L with f = x^2, p = 3: p-curvature of d is -(2x)^3 = x^3
    Ring r(3, 1, 'x');
    Connection line = Connection::twisted_line(parse_poly("x0^2", r));
    VectorField d(r);
    d.coeffs[0] = Poly::constant(r, 1);
    PolyMatrix pc = p_curvature(line, d);
    CHECK(pc.at(0, 0) == parse_poly("x0^3", r));
  }
  {
    // f = 0: psi is the identity, curvature vanishes
    Ring r(2, 2, 'x');
    Connection line = Connection::twisted_line(Poly::zero(r));
    VectorField d(r);
    d.coeffs[0] = Poly::constant(r, 1);
    CHECK(p_curvature(line, d).is_zero());
  }
}

TEST_CASE("non-flat connection rejected at construction") {
  Ring r(3, 2, 'x');
  // A_1 = [[x1]], A_2 = 0 on rank 1: d_2(A_1) = 1 != 0
  std::vector<PolyMatrix> mats(2, PolyMatrix(1, 1, r));
  mats[0].at(0, 0) = Poly::variable(r, 1);
  CHECK_THROWS_AS(Connection(r, 1, std::move(mats)), Error);
}

TEST_CASE("operator config syntax") {
  Ring r(5, 2, 'x');
  WeylOp a = parse_weyl("x0^2*d0 + d1^3", r);
  WeylOp expect = weyl_mul(WeylOp::from_poly(parse_poly("x0^2", r)), WeylOp::derivation(r, 0)) +
                  WeylOp::derivation(r, 1).pow(3);
  CHECK(a == expect);
  // factors multiply in written order, so d0*x0 normal-orders to x0 d0 + 1
  CHECK(parse_weyl("d0*x0", r) == parse_weyl("x0*d0 + 1", r));
  CHECK_THROWS_AS(parse_weyl("d5", r), Error);
}

TEST_CASE("operator degree guard rejects blowups") {
  Ring r(2, 1, 'x');
  WeylOp big = WeylOp::derivation(r, 0).pow(9);  // d-degree 9 > 4p = 8
  CHECK_THROWS_AS(weyl_mul(big, WeylOp::derivation(r, 0)), Error);
}
