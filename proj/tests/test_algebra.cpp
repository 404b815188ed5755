#include <doctest.h>

#include <random>
#include <functional>

#include "chp/polynomial.hpp"

using namespace chp;

namespace {

Poly rand_poly(std::mt19937& rng, const Ring& r, uint32_t maxdeg, uint32_t density = 2) {
  Poly f(r);
  std::function<void(Monomial&, size_t, uint32_t)> rec = [&](Monomial& m, size_t i,
                                                             uint32_t rem) {
    if (i + 1 == r.nvars) {
      for (uint32_t e = 0; e <= rem; ++e) {
        m[i] = e;
        if (rng() % density == 0) f.add_term(m, rng() % r.p);
      }
      m[i] = 0;
      return;
    }
    for (uint32_t e = 0; e <= rem; ++e) {
      m[i] = e;
      rec(m, i + 1, rem - e);
    }
    m[i] = 0;
  };
  Monomial m(r.nvars);
  rec(m, 0, maxdeg);
  return f;
}

}  // namespace

TEST_CASE("field element arithmetic is exact") {
  Fp a(5, 7), b(4, 7);
  CHECK((a * b).value() == 6);
  CHECK((a + b).value() == 2);
  CHECK((a - b).value() == 1);
  CHECK(a.inverse().value() == 3);  // 5*3 = 15 = 1 mod 7
  CHECK_THROWS_AS(Fp(1, 4), Error);
  CHECK_THROWS_AS((void)(Fp(1, 5) + Fp(1, 7)), Error);
}

TEST_CASE("poly arithmetic examples") {
  Ring r(3, 1, 'x');
  Poly x = Poly::variable(r, 0);
  Poly one = Poly::constant(r, 1);

  // (x+1)(x-1) = x^2 + 2 mod 3
  Poly prod = (x + one) * (x - one);
  CHECK(prod == parse_poly("x0^2 + 2", r));

  // f * 0 = 0
  CHECK((prod * Poly::zero(r)).is_zero());

  // freshman's dream in char 3
  Ring r2(3, 2, 'x');
  Poly s = parse_poly("x0 + x1", r2);
  CHECK(s.pow(3) == parse_poly("x0^3 + x1^3", r2));
}

TEST_CASE("partial derivative examples") {
  Ring r(3, 2, 'x');
  CHECK(partial_derivative(parse_poly("x0^3", r), 0).is_zero());
  CHECK(partial_derivative(parse_poly("x0^2 + x0*x1", r), 0) == parse_poly("2*x0 + x1", r));
  CHECK(partial_derivative(parse_poly("x0^2", r), 1).is_zero());
  CHECK_THROWS_AS(partial_derivative(parse_poly("x0", r), 5), Error);
}

TEST_CASE("p-power substitution examples") {
  Ring x3(3, 1, 'x'), y3(3, 1, 'y');
  CHECK(p_power_substitute(parse_poly("x0^2", x3), y3) == parse_poly("y0^2", y3));
  CHECK(p_power_substitute(Poly::zero(x3), y3).is_zero());
  Ring x5(5, 1, 'x'), y5(5, 1, 'y');
  CHECK(p_power_substitute(parse_poly("x0^3 + 2*x0", x5), y5) ==
        parse_poly("y0^3 + 2*y0", y5));
}

TEST_CASE("ring axioms on random samples") {
  for (uint32_t p : {2u, 3u, 5u}) {
    Ring r(p, 2, 'x');
    std::mt19937 rng(42 + p);
    for (int t = 0; t < 25; ++t) {
      Poly a = rand_poly(rng, r, 3), b = rand_poly(rng, r, 3), c = rand_poly(rng, r, 3);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
    }
  }
}

TEST_CASE("Leibniz rule and char-p identity") {
  for (uint32_t p : {2u, 3u, 5u}) {
    Ring r(p, 2, 'x');
    std::mt19937 rng(7 * p);
    for (int t = 0; t < 20; ++t) {
      Poly f = rand_poly(rng, r, 3), g = rand_poly(rng, r, 3);
      for (size_t i = 0; i < 2; ++i) {
        CHECK(partial_derivative(f * g, i) ==
              f * partial_derivative(g, i) + g * partial_derivative(f, i));
        CHECK(partial_derivative(f.pow(p), i).is_zero());
      }
    }
  }
}

TEST_CASE("serialize then reparse is the identity") {
  for (uint32_t p : {2u, 5u, 13u}) {
    Ring r(p, 3, 'x');
    std::mt19937 rng(100 + p);
    for (int t = 0; t < 30; ++t) {
      Poly f = rand_poly(rng, r, 4);
      CHECK(parse_poly(f.to_string(), r) == f);
    }
  }
}

TEST_CASE("parser rejects bad input with positions") {
  Ring r(5, 2, 'x');
  CHECK_THROWS_AS(parse_poly("x0 +", r), Error);
  CHECK_THROWS_AS(parse_poly("x7", r), Error);
  CHECK_THROWS_AS(parse_poly("y0", r), Error);
  CHECK_THROWS_AS(parse_poly("2*^3", r), Error);
  CHECK(parse_poly("(x0 + 1)^2", r) == parse_poly("x0^2 + 2*x0 + 1", r));
}

TEST_CASE("evaluation agrees with substitution") {
  Ring r(7, 2, 'x');
  Poly f = parse_poly("3*x0^2*x1 + x1 - 2", r);
  // f(2, 3) = 3*4*3 + 3 - 2 = 37 = 2 mod 7
  CHECK(evaluate(f, {2, 3}).value() == 2);
}
