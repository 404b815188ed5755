#include "chp/monomial.hpp"

#include <algorithm>

namespace chp {

uint64_t Monomial::degree() const {
  uint64_t d = 0;
  for (uint32_t e : e_) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(e_.begin(), e_.end(), [](uint32_t e) { return e == 0; });
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::quotient_into(const Monomial& o) const {
  Monomial r(o);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a);
  for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
  return r;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.nvars(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
  uint64_t da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

}  // namespace chp
