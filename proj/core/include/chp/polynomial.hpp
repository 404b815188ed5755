#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chp/fp.hpp"
#include "chp/monomial.hpp"

namespace chp {

// A polynomial ring F_p[v0..v{n-1}] with a one-letter variable prefix:
// 'x' for coordinate rings on X, 'y' for the Frobenius-twisted side.
struct Ring {
  uint32_t p = 0;
  uint32_t nvars = 0;
  char prefix = 'x';

  Ring() = default;
  Ring(uint32_t p_, uint32_t nvars_, char prefix_ = 'x');

  std::string var_name(size_t i) const;
  bool operator==(const Ring& o) const {
    return p == o.p && nvars == o.nvars && prefix == o.prefix;
  }
  bool operator!=(const Ring& o) const { return !(*this == o); }
};

// Sparse multivariate polynomial over F_p.  Terms are kept in descending
// grevlex order with no zero coefficients, so iteration order (and the
// leading term) is canonical.
class Poly {
public:
  using TermMap = std::map<Monomial, uint32_t, GrevlexGreater>;

  Poly() = default;
  explicit Poly(Ring ring) : ring_(ring) {}
  Poly(Ring ring, TermMap terms) : ring_(ring), terms_(std::move(terms)) {}

  static Poly zero(const Ring& r) { return Poly(r); }
  static Poly constant(const Ring& r, int64_t c);
  static Poly variable(const Ring& r, size_t i, uint32_t exp = 1);
  static Poly monomial(const Ring& r, Monomial m, int64_t c = 1);

  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  size_t term_count() const { return terms_.size(); }
  uint64_t degree() const;  // total degree; 0 for the zero polynomial

  // Leading term w.r.t. grevlex (largest); requires a nonzero polynomial.
  const Monomial& lead_monomial() const;
  uint32_t lead_coeff() const;
  uint32_t coeff(const Monomial& m) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(uint32_t c) const;               // c * this
  Poly times_monomial(const Monomial& m, uint32_t c) const;
  Poly pow(uint64_t e) const;

  void add_term(const Monomial& m, uint32_t c);  // in-place, canonicalizing

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string() const;

private:
  void check_same_ring(const Poly& o) const;
  Ring ring_;
  TermMap terms_;
};

// Formal partial derivative with respect to variable i, reduced mod p.
Poly partial_derivative(const Poly& f, size_t i);

// Relative Frobenius on coordinate rings: x_i -> y_i with coefficients
// raised to the p-th power (the identity on prime fields).  The result has
// the same exponent structure over the twisted ring.
Poly p_power_substitute(const Poly& f, const Ring& twisted);

// Substitute v_i -> v_i^p within the same-prefix ring jump y -> x (used by
// the pi_* dictionary: a coefficient in y pulls back through x_i^p).
Poly substitute_p_powers(const Poly& f, const Ring& target);

// Parse the textual syntax `2*x0^2*x1 + x2 - 1` into the given ring.
// Errors carry 1-based character positions.
Poly parse_poly(const std::string& text, const Ring& ring);

Fp evaluate(const Poly& f, const std::vector<uint32_t>& point);

}  // namespace chp
