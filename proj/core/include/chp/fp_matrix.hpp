#pragma once

#include <cstdint>
#include <vector>

#include "chp/fp.hpp"

namespace chp {

// Dense matrix over F_p, row-major raw residues.
class FpMatrix {
public:
  FpMatrix() = default;
  FpMatrix(size_t rows, size_t cols, uint32_t p)
      : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {
    if (!is_prime(p)) throw Error(ErrorKind::structural, "modulus must be prime");
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t modulus() const { return p_; }

  uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  void set(size_t r, size_t c, uint32_t v) { a_[r * cols_ + c] = v % p_; }
  uint32_t* row(size_t r) { return a_.data() + r * cols_; }
  const uint32_t* row(size_t r) const { return a_.data() + r * cols_; }

  bool operator==(const FpMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
  }

private:
  size_t rows_ = 0, cols_ = 0;
  uint32_t p_ = 2;
  std::vector<uint32_t> a_;
};

struct RrefResult {
  FpMatrix reduced;
  size_t rank = 0;
  std::vector<size_t> pivot_cols;
  std::vector<std::vector<uint32_t>> kernel;  // basis of the right null space
};

// Exact reduced row-echelon form with kernel basis; rank + kernel dimension
// equals the column count.
RrefResult rref(const FpMatrix& m);

size_t rank(const FpMatrix& m);

// Incremental column-space builder: keeps an echelonized basis of inserted
// vectors with one pivot row per basis vector.  Row order is the natural
// index order (pivot = lowest nonzero index after reduction).
class ColSpace {
public:
  ColSpace(size_t dim, uint32_t p) : dim_(dim), p_(p) {}

  size_t dim() const { return dim_; }
  size_t size() const { return basis_.size(); }
  const std::vector<uint32_t>& basis_vector(size_t i) const { return basis_[i]; }
  const std::vector<size_t>& pivots() const { return pivots_; }

  // Reduce v against the basis in place; returns the combination used
  // (coords such that v_original = residual + sum coords_i * basis_i).
  std::vector<uint32_t> reduce(std::vector<uint32_t>& v) const;

  // Insert v (reduced first); returns true if it enlarged the space.
  bool insert(std::vector<uint32_t> v);

  bool contains(std::vector<uint32_t> v) const;

private:
  size_t dim_;
  uint32_t p_;
  std::vector<std::vector<uint32_t>> basis_;  // echelonized, monic pivots
  std::vector<size_t> pivots_;                // pivot row of each basis vector
};

}  // namespace chp
