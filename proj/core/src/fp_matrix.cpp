#include "chp/fp_matrix.hpp"

#include <algorithm>

namespace chp {

namespace {

// row_dst -= c * row_src over F_p, contiguous spans.
inline void axpy(uint32_t* dst, const uint32_t* src, uint32_t c, size_t n, uint32_t p) {
  if (c == 0) return;
  const uint64_t cc = c;
  for (size_t i = 0; i < n; ++i) {
    if (src[i])
      dst[i] = static_cast<uint32_t>((dst[i] + cc * (p - src[i])) % p);
  }
}

}  // namespace

RrefResult rref(const FpMatrix& m) {
  RrefResult out;
  out.reduced = m;
  FpMatrix& a = out.reduced;
  const uint32_t p = m.modulus();
  const size_t rows = m.rows(), cols = m.cols();

  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (size_t j = 0; j < cols; ++j) {
        uint32_t t = a.at(r, j);
        a.set(r, j, a.at(piv, j));
        a.set(piv, j, t);
      }
    uint32_t inv = fp_inv(a.at(r, c), p);
    if (inv != 1)
      for (size_t j = c; j < cols; ++j) a.set(r, j, fp_mul(a.at(r, j), inv, p));
    for (size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      uint32_t f = a.at(i, c);
      if (f == 0) continue;
      axpy(a.row(i), a.row(r), f, cols, p);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;

  // Kernel basis: one vector per free column.
  std::vector<int64_t> pivot_of_col(cols, -1);
  for (size_t i = 0; i < out.pivot_cols.size(); ++i) pivot_of_col[out.pivot_cols[i]] = static_cast<int64_t>(i);
  for (size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<uint32_t> v(cols, 0);
    v[c] = 1;
    for (size_t i = 0; i < out.pivot_cols.size(); ++i) {
      uint32_t coef = a.at(i, c);
      if (coef) v[out.pivot_cols[i]] = fp_neg(coef, p);
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

size_t rank(const FpMatrix& m) {
  // Destructive elimination without back-substitution or kernel extraction.
  FpMatrix a = m;
  const uint32_t p = m.modulus();
  const size_t rows = a.rows(), cols = a.cols();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a.at(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (size_t j = c; j < cols; ++j) {
        uint32_t t = a.at(r, j);
        a.set(r, j, a.at(piv, j));
        a.set(piv, j, t);
      }
    uint32_t inv = fp_inv(a.at(r, c), p);
    for (size_t i = r + 1; i < rows; ++i) {
      uint32_t f = a.at(i, c);
      if (f == 0) continue;
      uint32_t scale = fp_mul(f, inv, p);
      axpy(a.row(i) + c, a.row(r) + c, scale, cols - c, p);
    }
    ++r;
  }
  return r;
}

std::vector<uint32_t> ColSpace::reduce(std::vector<uint32_t>& v) const {
  std::vector<uint32_t> coords(basis_.size(), 0);
  for (size_t i = 0; i < basis_.size(); ++i) {
    uint32_t c = v[pivots_[i]];
    if (c == 0) continue;
    coords[i] = c;
    const auto& b = basis_[i];
    uint64_t cc = c;
    for (size_t j = 0; j < dim_; ++j)
      if (b[j]) v[j] = static_cast<uint32_t>((v[j] + cc * (p_ - b[j])) % p_);
  }
  return coords;
}

bool ColSpace::insert(std::vector<uint32_t> v) {
  reduce(v);
  size_t piv = 0;
  while (piv < dim_ && v[piv] == 0) ++piv;
  if (piv == dim_) return false;
  uint32_t inv = fp_inv(v[piv], p_);
  if (inv != 1)
    for (auto& x : v) x = fp_mul(x, inv, p_);
  // Keep the basis fully reduced: clear this pivot from existing vectors.
  for (size_t i = 0; i < basis_.size(); ++i) {
    uint32_t c = basis_[i][piv];
    if (c == 0) continue;
    uint64_t cc = c;
    auto& b = basis_[i];
    for (size_t j = 0; j < dim_; ++j)
      if (v[j]) b[j] = static_cast<uint32_t>((b[j] + cc * (p_ - v[j])) % p_);
  }
  basis_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool ColSpace::contains(std::vector<uint32_t> v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; });
}

}  // namespace chp
