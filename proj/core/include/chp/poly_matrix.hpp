#pragma once

#include <vector>

#include "chp/polynomial.hpp"

namespace chp {

// Rectangular matrix of polynomials over one ring; the representation of
// every O-linear map between free modules in the system.
class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(size_t rows, size_t cols, const Ring& ring)
      : rows_(rows), cols_(cols), ring_(ring), a_(rows * cols, Poly(ring)) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const Ring& ring() const { return ring_; }

  const Poly& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  Poly& at(size_t r, size_t c) { return a_[r * cols_ + c]; }

  static PolyMatrix identity(size_t n, const Ring& ring);
  static PolyMatrix from_strings(const std::vector<std::vector<std::string>>& rows,
                                 const Ring& ring);

  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix scaled(const Poly& f) const;

  std::vector<Poly> apply(const std::vector<Poly>& v) const;
  std::vector<Poly> column(size_t c) const;
  bool is_zero() const;

  bool operator==(const PolyMatrix& o) const;

private:
  void check_ring(const PolyMatrix& o) const {
    if (ring_ != o.ring_) throw Error(ErrorKind::structural, "matrix ring mismatch");
  }
  size_t rows_ = 0, cols_ = 0;
  Ring ring_;
  std::vector<Poly> a_;
};

// Entrywise partial derivative.
PolyMatrix partial_derivative(const PolyMatrix& m, size_t i);

// Matrix commutator [a, b] = ab - ba for square matrices.
PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b);

}  // namespace chp
