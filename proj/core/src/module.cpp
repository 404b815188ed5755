#include "chp/module.hpp"

#include <sstream>

namespace chp {

ModuleVector ModuleVector::unit(const Ring& ring, size_t rank, size_t pos) {
  ModuleVector v(ring, rank);
  v[pos] = Poly::constant(ring, 1);
  return v;
}

bool ModuleVector::is_zero() const {
  for (const Poly& f : comps_)
    if (!f.is_zero()) return false;
  return true;
}

ModuleTerm ModuleVector::lead_term() const {
  for (size_t i = 0; i < comps_.size(); ++i)
    if (!comps_[i].is_zero()) return {i, comps_[i].lead_monomial()};
  throw Error(ErrorKind::structural, "leading term of zero vector");
}

uint32_t ModuleVector::lead_coeff() const {
  for (const Poly& f : comps_)
    if (!f.is_zero()) return f.lead_coeff();
  throw Error(ErrorKind::structural, "leading coefficient of zero vector");
}

ModuleVector ModuleVector::operator+(const ModuleVector& o) const {
  if (rank() != o.rank()) throw Error(ErrorKind::structural, "rank mismatch in +");
  ModuleVector r(ring_, rank());
  for (size_t i = 0; i < comps_.size(); ++i) r[i] = comps_[i] + o[i];
  return r;
}

ModuleVector ModuleVector::operator-(const ModuleVector& o) const {
  if (rank() != o.rank()) throw Error(ErrorKind::structural, "rank mismatch in -");
  ModuleVector r(ring_, rank());
  for (size_t i = 0; i < comps_.size(); ++i) r[i] = comps_[i] - o[i];
  return r;
}

ModuleVector ModuleVector::scaled(uint32_t c) const {
  ModuleVector r(ring_, rank());
  for (size_t i = 0; i < comps_.size(); ++i) r[i] = comps_[i].scaled(c);
  return r;
}

ModuleVector ModuleVector::times_monomial(const Monomial& m, uint32_t c) const {
  ModuleVector r(ring_, rank());
  for (size_t i = 0; i < comps_.size(); ++i) r[i] = comps_[i].times_monomial(m, c);
  return r;
}

ModuleVector ModuleVector::times(const Poly& f) const {
  ModuleVector r(ring_, rank());
  for (size_t i = 0; i < comps_.size(); ++i) r[i] = comps_[i] * f;
  return r;
}

std::string ModuleVector::to_string() const {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < comps_.size(); ++i) {
    if (i) out << ", ";
    out << comps_[i].to_string();
  }
  out << ")";
  return out.str();
}

bool lead_term_greater(const ModuleVector& a, const ModuleVector& b) {
  bool az = a.is_zero(), bz = b.is_zero();
  if (az || bz) return !az && bz;
  ModuleTerm ta = a.lead_term(), tb = b.lead_term();
  if (ta.pos != tb.pos || ta.mono != tb.mono) return pot_greater(ta, tb);
  return a.to_string() < b.to_string();  // stable tie-break, rarely hit
}

}  // namespace chp
