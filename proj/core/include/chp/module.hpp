#pragma once

#include <optional>

#include "chp/poly_matrix.hpp"

namespace chp {

// A term of a free-module element: basis position plus monomial.
struct ModuleTerm {
  size_t pos = 0;
  Monomial mono;
};

// Position-over-term with grevlex on monomials; lower positions dominate
// (e_0 is the largest basis vector).  This is the one order used by the
// whole engine, fixed for determinism.
inline bool pot_greater(const ModuleTerm& a, const ModuleTerm& b) {
  if (a.pos != b.pos) return a.pos < b.pos;
  return grevlex_less(b.mono, a.mono);
}

// Element of a free module R^rank with polynomial components.
class ModuleVector {
public:
  ModuleVector() = default;
  ModuleVector(const Ring& ring, size_t rank)
      : ring_(ring), comps_(rank, Poly(ring)) {}
  ModuleVector(const Ring& ring, std::vector<Poly> comps)
      : ring_(ring), comps_(std::move(comps)) {}

  static ModuleVector unit(const Ring& ring, size_t rank, size_t pos);

  const Ring& ring() const { return ring_; }
  size_t rank() const { return comps_.size(); }
  const Poly& operator[](size_t i) const { return comps_[i]; }
  Poly& operator[](size_t i) { return comps_[i]; }
  const std::vector<Poly>& components() const { return comps_; }

  bool is_zero() const;
  // Leading term under POT: the grevlex-leading monomial of the first
  // nonzero component.
  ModuleTerm lead_term() const;
  uint32_t lead_coeff() const;

  ModuleVector operator+(const ModuleVector& o) const;
  ModuleVector operator-(const ModuleVector& o) const;
  ModuleVector scaled(uint32_t c) const;
  ModuleVector times_monomial(const Monomial& m, uint32_t c) const;
  ModuleVector times(const Poly& f) const;

  bool operator==(const ModuleVector& o) const {
    return ring_ == o.ring_ && comps_ == o.comps_;
  }

  std::string to_string() const;

private:
  Ring ring_;
  std::vector<Poly> comps_;
};

// Deterministic total order on vectors by leading term, for sorting bases.
bool lead_term_greater(const ModuleVector& a, const ModuleVector& b);

}  // namespace chp
