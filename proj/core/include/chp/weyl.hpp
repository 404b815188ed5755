#pragma once

#include "chp/poly_matrix.hpp"

namespace chp {

// Normal-form element of the crystalline differential-operator algebra on
// affine n-space: sum of c * x^a d^b with every x to the left of every d.
// Unlike Grothendieck's full ring, d_i^p is a nonzero (central) element.
class WeylOp {
public:
  struct Key {
    Monomial x, d;
    bool operator<(const Key& o) const;
    bool operator==(const Key& o) const { return x == o.x && d == o.d; }
  };
  using TermMap = std::map<Key, uint32_t>;

  WeylOp() = default;
  explicit WeylOp(Ring ring) : ring_(ring) {}

  static WeylOp zero(const Ring& r) { return WeylOp(r); }
  static WeylOp constant(const Ring& r, int64_t c);
  static WeylOp from_poly(const Poly& f);
  static WeylOp coordinate(const Ring& r, size_t i);   // x_i
  static WeylOp derivation(const Ring& r, size_t i);   // d_i
  static WeylOp term(const Ring& r, Monomial x, Monomial d, int64_t c);

  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  uint64_t d_degree() const;  // max total degree of the d-part

  WeylOp operator+(const WeylOp& o) const;
  WeylOp operator-(const WeylOp& o) const;
  WeylOp operator-() const;
  WeylOp scaled(uint32_t c) const;
  WeylOp pow(uint64_t e) const;
  bool operator==(const WeylOp& o) const;
  bool operator!=(const WeylOp& o) const { return !(*this == o); }

  void add_term(const Monomial& x, const Monomial& d, uint32_t c);

  // Extract the order-zero (d-free) part as a polynomial; nullopt if any d
  // survives after deleting the terms that act as zero on O (those with
  // some d-exponent >= p).
  std::optional<Poly> as_multiplication_operator() const;

  std::string to_string() const;

private:
  Ring ring_;
  TermMap terms_;
};

// Normal-form product; the commutation d^b * x^c is expanded exactly.
WeylOp weyl_mul(const WeylOp& a, const WeylOp& b);

// Action on O: d_i differentiates, x_i multiplies.
Poly apply_operator(const WeylOp& op, const Poly& g);

// First-order operator sum g_i(x) d_i (no order-zero part).
struct VectorField {
  std::vector<Poly> coeffs;  // one per variable

  explicit VectorField(const Ring& ring) : coeffs(ring.nvars, Poly(ring)) {}
  explicit VectorField(std::vector<Poly> c) : coeffs(std::move(c)) {
    if (coeffs.empty() || coeffs.size() != coeffs[0].ring().nvars)
      throw Error(ErrorKind::structural, "vector field needs one coefficient per variable");
  }

  const Ring& ring() const { return coeffs.at(0).ring(); }
  WeylOp as_operator() const;
  bool is_zero() const;
  bool operator==(const VectorField& o) const { return coeffs == o.coeffs; }
};

// theta^[p]: the vector field acting like theta^p on functions, computed by
// p-fold application to the coordinates.
VectorField restricted_power(const VectorField& theta);

// The center map iota: a vector field on X' (y-coordinates) is carried
// through the pi_* dictionary (coefficients pulled back along x_i^p) and
// mapped to theta^p - theta^[p], a central element.
WeylOp center_map(const VectorField& theta_twisted, const Ring& x_ring);

// The twist automorphism psi_f: x_i -> x_i, d_i -> d_i - d_i(f).
WeylOp twist_automorphism(const Poly& f, const WeylOp& a);

// Flat connection nabla_{d_i} = d_i + A_i on O^r; flatness is checked at
// construction.
class Connection {
public:
  Connection(const Ring& ring, size_t rank, std::vector<PolyMatrix> matrices);

  static Connection trivial(const Ring& ring, size_t rank);
  // L = psi_* O: rank one, A_i = -d_i(f).
  static Connection twisted_line(const Poly& f);

  const Ring& ring() const { return ring_; }
  size_t rank() const { return rank_; }
  const PolyMatrix& matrix(size_t i) const { return a_.at(i); }

private:
  Ring ring_;
  size_t rank_;
  std::vector<PolyMatrix> a_;
};

// The O-linear operator nabla_theta^p - nabla_{theta^[p]} through which the
// center acts; returned as an honest polynomial matrix.
PolyMatrix p_curvature(const Connection& conn, const VectorField& theta);

// Parse `x0^2*d0 + d1^3` (factors multiplied in written order).
WeylOp parse_weyl(const std::string& text, const Ring& ring);

}  // namespace chp
