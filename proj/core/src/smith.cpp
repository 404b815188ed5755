#include "chp/smith.hpp"

namespace chp {

namespace {

int64_t udeg(const Poly& f) {
  return f.is_zero() ? -1 : static_cast<int64_t>(f.degree());
}

void require_univariate(const PolyMatrix& m) {
  if (m.ring().nvars != 1)
    throw Error(ErrorKind::structural, "Smith form requires univariate entries");
}

}  // namespace

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (a.ring().nvars != 1 || b.ring() != a.ring())
    throw Error(ErrorKind::structural, "divmod requires one shared univariate ring");
  if (b.is_zero()) throw Error(ErrorKind::structural, "division by zero polynomial");
  const Ring& ring = a.ring();
  const uint32_t p = ring.p;
  Poly q(ring), r(a);
  uint32_t lead_inv = fp_inv(b.lead_coeff(), p);
  while (!r.is_zero() && udeg(r) >= udeg(b)) {
    uint64_t shift = r.degree() - b.degree();
    uint32_t c = fp_mul(r.lead_coeff(), lead_inv, p);
    Monomial m(1);
    m[0] = static_cast<uint32_t>(shift);
    q.add_term(m, c);
    r = r - b.times_monomial(m, c);
  }
  return {q, r};
}

std::vector<Poly> SmithForm::diagonal() const {
  std::vector<Poly> out;
  size_t n = std::min(d.rows(), d.cols());
  for (size_t i = 0; i < n; ++i) out.push_back(d.at(i, i));
  return out;
}

size_t SmithForm::diag_rank() const {
  size_t r = 0;
  for (const Poly& f : diagonal())
    if (!f.is_zero()) ++r;
  return r;
}

SmithForm smith_normal_form(const PolyMatrix& m) {
  require_univariate(m);
  const Ring& ring = m.ring();
  const uint32_t p = ring.p;
  SmithForm s{PolyMatrix::identity(m.rows(), ring), m,
              PolyMatrix::identity(m.cols(), ring)};
  PolyMatrix& d = s.d;
  const size_t rows = m.rows(), cols = m.cols();

  auto swap_rows = [&](size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < cols; ++j) std::swap(d.at(a, j), d.at(b, j));
    for (size_t j = 0; j < rows; ++j) std::swap(s.u.at(a, j), s.u.at(b, j));
    s.det_u = fp_neg(s.det_u, p);
  };
  auto swap_cols = [&](size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < rows; ++i) std::swap(d.at(i, a), d.at(i, b));
    for (size_t i = 0; i < cols; ++i) std::swap(s.v.at(i, a), s.v.at(i, b));
    s.det_v = fp_neg(s.det_v, p);
  };
  auto row_sub = [&](size_t dst, size_t src, const Poly& q) {  // row_dst -= q*row_src
    if (q.is_zero()) return;
    for (size_t j = 0; j < cols; ++j) d.at(dst, j) = d.at(dst, j) - q * d.at(src, j);
    for (size_t j = 0; j < rows; ++j) s.u.at(dst, j) = s.u.at(dst, j) - q * s.u.at(src, j);
  };
  auto col_sub = [&](size_t dst, size_t src, const Poly& q) {  // col_dst -= q*col_src
    if (q.is_zero()) return;
    for (size_t i = 0; i < rows; ++i) d.at(i, dst) = d.at(i, dst) - q * d.at(i, src);
    for (size_t i = 0; i < cols; ++i) s.v.at(i, dst) = s.v.at(i, dst) - q * s.v.at(i, src);
  };

  size_t n = std::min(rows, cols);
  for (size_t k = 0; k < n; ++k) {
    while (true) {
      // Pick the minimum-degree nonzero entry of the trailing block.
      int64_t best = -1;
      size_t bi = k, bj = k;
      for (size_t i = k; i < rows; ++i)
        for (size_t j = k; j < cols; ++j) {
          int64_t deg = udeg(d.at(i, j));
          if (deg >= 0 && (best < 0 || deg < best)) {
            best = deg;
            bi = i;
            bj = j;
          }
        }
      if (best < 0) {
        k = n;  // trailing block is zero; done
        break;
      }
      swap_rows(k, bi);
      swap_cols(k, bj);

      bool clean = true;
      for (size_t i = k + 1; i < rows; ++i) {
        if (d.at(i, k).is_zero()) continue;
        auto [q, r] = poly_divmod(d.at(i, k), d.at(k, k));
        row_sub(i, k, q);
        if (!r.is_zero()) clean = false;
      }
      for (size_t j = k + 1; j < cols; ++j) {
        if (d.at(k, j).is_zero()) continue;
        auto [q, r] = poly_divmod(d.at(k, j), d.at(k, k));
        col_sub(j, k, q);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;

      // Pivot divides its row and column (both now zero off-pivot); make it
      // divide the whole trailing block before moving on.
      bool divides_all = true;
      for (size_t i = k + 1; i < rows && divides_all; ++i)
        for (size_t j = k + 1; j < cols && divides_all; ++j) {
          if (d.at(i, j).is_zero()) continue;
          auto [q, r] = poly_divmod(d.at(i, j), d.at(k, k));
          (void)q;
          if (!r.is_zero()) {
            row_sub(k, i, -Poly::constant(ring, 1));  // row_k += row_i
            divides_all = false;
          }
        }
      if (divides_all) break;
    }
    if (k >= n) break;
  }

  // Monic normalization of the diagonal.
  for (size_t k = 0; k < n; ++k) {
    if (d.at(k, k).is_zero()) continue;
    uint32_t lc = d.at(k, k).lead_coeff();
    if (lc == 1) continue;
    uint32_t inv = fp_inv(lc, p);
    for (size_t j = 0; j < cols; ++j) d.at(k, j) = d.at(k, j).scaled(inv);
    for (size_t j = 0; j < rows; ++j) s.u.at(k, j) = s.u.at(k, j).scaled(inv);
    s.det_u = fp_mul(s.det_u, inv, p);
  }
  return s;
}

CokernelShape cokernel_shape(const SmithForm& s) {
  CokernelShape out;
  size_t nz = 0;
  for (const Poly& f : s.diagonal()) {
    if (f.is_zero()) continue;
    ++nz;
    out.torsion_dim += f.degree();
  }
  out.free_rank = s.d.rows() - nz;
  return out;
}

PolyMatrix smith_kernel_basis(const PolyMatrix& m) {
  SmithForm s = smith_normal_form(m);
  // A column j of D is zero iff j >= min(rows,cols) or d_j = 0; the matching
  // columns of V are a free basis of ker(M).
  std::vector<size_t> kernel_cols;
  size_t n = std::min(m.rows(), m.cols());
  for (size_t j = 0; j < m.cols(); ++j) {
    bool zero = j >= n || s.d.at(j, j).is_zero();
    if (zero) kernel_cols.push_back(j);
  }
  PolyMatrix basis(m.cols(), kernel_cols.size(), m.ring());
  for (size_t t = 0; t < kernel_cols.size(); ++t)
    for (size_t i = 0; i < m.cols(); ++i) basis.at(i, t) = s.v.at(i, kernel_cols[t]);
  return basis;
}

std::vector<SmithDegreeShape> smith_complex_profile(const std::vector<size_t>& ranks,
                                                    const std::vector<PolyMatrix>& diffs) {
  if (diffs.size() + 1 != ranks.size())
    throw Error(ErrorKind::structural, "complex shape mismatch");
  const Ring* ring = nullptr;
  for (const auto& d : diffs) {
    require_univariate(d);
    ring = &d.ring();
  }
  if (!ring) throw Error(ErrorKind::structural, "empty complex");

  std::vector<SmithDegreeShape> out(ranks.size());
  for (size_t i = 0; i < ranks.size(); ++i) {
    // Kernel of the outgoing differential (everything at the top degree).
    PolyMatrix ker(ranks[i], 0, *ring);
    if (i + 1 < ranks.size() && ranks[i] > 0) {
      ker = smith_kernel_basis(diffs[i]);
    } else {
      ker = PolyMatrix::identity(ranks[i], *ring);
    }

    if (i == 0 || ranks[i] == 0) {
      out[i].free_rank = ker.cols();
      out[i].torsion_dim = 0;
      continue;
    }

    // Express the incoming image in the kernel basis: solve ker * C = B.
    const PolyMatrix& b = diffs[i - 1];
    SmithForm ks = smith_normal_form(ker);
    PolyMatrix w = ks.u * b;  // = D * (V^{-1} C)
    size_t kr = ks.diag_rank();
    PolyMatrix c_tilde(ker.cols(), b.cols(), *ring);
    for (size_t r = 0; r < w.rows(); ++r)
      for (size_t cc = 0; cc < w.cols(); ++cc) {
        if (r >= kr) {
          if (!w.at(r, cc).is_zero())
            throw Error(ErrorKind::structural, "image not contained in kernel");
          continue;
        }
        auto [q, rem] = poly_divmod(w.at(r, cc), ks.d.at(r, r));
        if (!rem.is_zero())
          throw Error(ErrorKind::structural, "image not contained in kernel");
        c_tilde.at(r, cc) = q;
      }
    PolyMatrix c = ks.v * c_tilde;
    CokernelShape shape = cokernel_shape(smith_normal_form(c));
    out[i].free_rank = shape.free_rank;
    out[i].torsion_dim = shape.torsion_dim;
  }
  return out;
}

}  // namespace chp
