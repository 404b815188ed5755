#include "chp/poly_matrix.hpp"

namespace chp {

PolyMatrix PolyMatrix::identity(size_t n, const Ring& ring) {
  PolyMatrix m(n, n, ring);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Poly::constant(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::from_strings(const std::vector<std::vector<std::string>>& rows,
                                    const Ring& ring) {
  size_t r = rows.size();
  size_t c = r == 0 ? 0 : rows[0].size();
  PolyMatrix m(r, c, ring);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw Error(ErrorKind::structural, "ragged matrix literal");
    for (size_t j = 0; j < c; ++j) m.at(i, j) = parse_poly(rows[i][j], ring);
  }
  return m;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  check_ring(o);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorKind::structural, "matrix extent mismatch in +");
  PolyMatrix m(rows_, cols_, ring_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  check_ring(o);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorKind::structural, "matrix extent mismatch in -");
  PolyMatrix m(rows_, cols_, ring_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  check_ring(o);
  if (cols_ != o.rows_)
    throw Error(ErrorKind::structural, "matrix extent mismatch in *");
  PolyMatrix m(rows_, o.cols_, ring_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const Poly& f = at(i, k);
      if (f.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        m.at(i, j) = m.at(i, j) + f * o.at(k, j);
      }
    }
  return m;
}

PolyMatrix PolyMatrix::scaled(const Poly& f) const {
  PolyMatrix m(rows_, cols_, ring_);
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * f;
  return m;
}

std::vector<Poly> PolyMatrix::apply(const std::vector<Poly>& v) const {
  if (v.size() != cols_)
    throw Error(ErrorKind::structural, "vector length mismatch in apply");
  std::vector<Poly> out(rows_, Poly(ring_));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !v[j].is_zero()) out[i] = out[i] + at(i, j) * v[j];
  return out;
}

std::vector<Poly> PolyMatrix::column(size_t c) const {
  std::vector<Poly> out;
  out.reserve(rows_);
  for (size_t i = 0; i < rows_; ++i) out.push_back(at(i, c));
  return out;
}

bool PolyMatrix::is_zero() const {
  for (const auto& f : a_)
    if (!f.is_zero()) return false;
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && ring_ == o.ring_ && a_ == o.a_;
}

PolyMatrix partial_derivative(const PolyMatrix& m, size_t i) {
  PolyMatrix out(m.rows(), m.cols(), m.ring());
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c) out.at(r, c) = partial_derivative(m.at(r, c), i);
  return out;
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) {
  return a * b - b * a;
}

}  // namespace chp
