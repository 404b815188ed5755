#pragma once

#include <optional>

#include "chp/poly_matrix.hpp"

namespace chp {

// Quotient and remainder for univariate polynomials, deg(r) < deg(b).
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);

// Smith normal form over k[y]: U * M * V = D with U, V unimodular and the
// diagonal divisibility chain d_i | d_{i+1}.  Exists only because k[y] is a
// PID; this is the independent oracle for one-variable cohomology.
struct SmithForm {
  PolyMatrix u, d, v;
  uint32_t det_u = 1, det_v = 1;  // determinants, nonzero constants

  std::vector<Poly> diagonal() const;
  size_t diag_rank() const;  // number of nonzero diagonal entries
};

SmithForm smith_normal_form(const PolyMatrix& m);

// Cokernel data of a univariate matrix read off its Smith form.
struct CokernelShape {
  uint64_t free_rank = 0;    // rows - diag_rank
  uint64_t torsion_dim = 0;  // sum of the degrees of the nonzero d_i
  bool finite() const { return free_rank == 0; }
};

CokernelShape cokernel_shape(const SmithForm& s);

// Free basis of ker(M) over k[y], one column per basis vector.
PolyMatrix smith_kernel_basis(const PolyMatrix& m);

// Cohomology of a bounded complex of free k[y]-modules, degree by degree,
// computed entirely through Smith decompositions.  diffs[i] maps the term
// of rank ranks[i] to the term of rank ranks[i+1].
struct SmithDegreeShape {
  uint64_t free_rank = 0;
  uint64_t torsion_dim = 0;
  bool finite() const { return free_rank == 0; }
};

std::vector<SmithDegreeShape> smith_complex_profile(const std::vector<size_t>& ranks,
                                                    const std::vector<PolyMatrix>& diffs);

}  // namespace chp
