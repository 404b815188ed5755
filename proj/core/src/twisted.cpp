#include "chp/twisted.hpp"

#include <algorithm>

namespace chp {

Superpotential::Superpotential(const Poly& f_in) : f(f_in), f_twisted(f_in.ring()) {
  const Ring& xr = f.ring();
  if (xr.prefix != 'x')
    throw Error(ErrorKind::structural, "superpotential lives in the x-ring");
  for (uint32_t i = 0; i < xr.nvars; ++i) partials.push_back(partial_derivative(f, i));
  f_twisted = p_power_substitute(f, Ring(xr.p, xr.nvars, 'y'));
}

ChainComplex build_twisted_pushforward(const Superpotential& f, GroebnerCache* cache) {
  AffineVariety x = AffineVariety::affine_space(f.n(), f.p());
  return build_pushforward_complex(x, f.f, cache);
}

ChainComplex build_wedge_complex(const Superpotential& f) {
  std::vector<Poly> elements;
  for (uint32_t i = 0; i < f.n(); ++i)
    elements.push_back(partial_derivative(f.f_twisted, i));
  return koszul_complex(elements);
}

namespace {

// Krull dimension of R/LT(J) from the leading-term monomials: the largest
// subset S of variables such that no leading monomial is supported in S.
int64_t monomial_ideal_dimension(const Ring& ring, const GroebnerBasis& gb) {
  size_t n = ring.nvars;
  std::vector<Monomial> lts;
  for (const auto& g : gb.generators()) lts.push_back(g.lead_term().mono);
  for (const auto& m : lts)
    if (m.is_one()) return -1;  // unit ideal, empty locus
  int64_t best = -1;
  for (size_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& m : lts) {
      bool supported = true;
      for (size_t v = 0; v < n && supported; ++v)
        if (m[v] > 0 && !(mask & (1u << v))) supported = false;
      if (supported) {
        ok = false;
        break;
      }
    }
    if (ok) best = std::max<int64_t>(best, __builtin_popcountll(mask));
  }
  return best;
}

// All c x c minors of a PolyMatrix, by cofactor expansion.
Poly minor_det(const PolyMatrix& m, const std::vector<size_t>& rows,
               const std::vector<size_t>& cols) {
  size_t c = rows.size();
  if (c == 0) return Poly::constant(m.ring(), 1);
  if (c == 1) return m.at(rows[0], cols[0]);
  Poly det(m.ring());
  std::vector<size_t> subrows(rows.begin() + 1, rows.end());
  for (size_t j = 0; j < c; ++j) {
    std::vector<size_t> subcols;
    for (size_t t = 0; t < c; ++t)
      if (t != j) subcols.push_back(cols[t]);
    Poly sub = minor_det(m, subrows, subcols);
    if (sub.is_zero() || m.at(rows[0], cols[j]).is_zero()) continue;
    Poly term = m.at(rows[0], cols[j]) * sub;
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace

CriticalLocusAnalysis critical_locus(const Superpotential& f, GroebnerCache* cache) {
  const Ring& xr = f.f.ring();
  size_t n = xr.nvars;
  CriticalLocusAnalysis out;
  for (const auto& g : f.partials)
    if (!g.is_zero()) out.jacobian_ideal.push_back(g);

  std::vector<ModuleVector> jgens;
  for (const auto& g : out.jacobian_ideal) jgens.emplace_back(xr, std::vector<Poly>{g});
  GroebnerBasis jgb = module_groebner(xr, 1, jgens, cache);

  out.dim = monomial_ideal_dimension(xr, jgb);
  if (out.dim < 0) {
    out.empty = true;
    out.smooth = true;  // vacuously
    out.split = true;
    out.codim = n;
    return out;
  }
  out.codim = n - static_cast<uint64_t>(out.dim);

  // Jacobian criterion: J + (codim x codim minors of Jac) is the unit ideal.
  size_t m = out.jacobian_ideal.size();
  PolyMatrix jac(m, n, xr);
  for (size_t i = 0; i < m; ++i)
    for (size_t v = 0; v < n; ++v) jac.at(i, v) = partial_derivative(out.jacobian_ideal[i], v);

  std::vector<ModuleVector> smooth_gens = jgens;
  if (out.codim == 0) {
    out.smooth = true;
  } else if (out.codim > m) {
    out.smooth = false;  // cannot reach the required rank
  } else {
    for (const auto& rows : subsets_of_size(m, out.codim))
      for (const auto& cols : subsets_of_size(n, out.codim)) {
        Poly det = minor_det(jac, rows, cols);
        if (!det.is_zero()) smooth_gens.emplace_back(xr, std::vector<Poly>{det});
      }
    GroebnerBasis sgb = module_groebner(xr, 1, smooth_gens, cache);
    KDim q = quotient_k_dimension(1, sgb);
    out.smooth = q.finite && q.dim == 0;
  }
  if (!out.smooth) return out;

  // Tangent sheaf T_Z = ker(Jac mod J) inside O_Z^n, generators pruned of
  // vectors vanishing on Z.
  std::vector<ModuleVector> jac_targets;
  for (size_t i = 0; i < m; ++i)
    for (const auto& g : out.jacobian_ideal) {
      ModuleVector w(xr, m);
      w[i] = g;
      jac_targets.push_back(w);
    }
  std::vector<ModuleVector> tangent;
  if (m == 0) {
    for (size_t v = 0; v < n; ++v) tangent.push_back(ModuleVector::unit(xr, n, v));
  } else {
    tangent = preimage_of_submodule(jac, jac_targets, cache);
    std::vector<ModuleVector> pruned;
    for (auto& t : tangent) {
      ModuleVector nf(xr, n);
      bool nonzero = false;
      for (size_t v = 0; v < n; ++v) {
        nf[v] = normal_form(ModuleVector(xr, std::vector<Poly>{t[v]}), jgb.generators())[0];
        if (!nf[v].is_zero()) nonzero = true;
      }
      if (nonzero) pruned.push_back(std::move(nf));
    }
    tangent = std::move(pruned);
  }
  out.tangent_generators = tangent;

  // First-order splitting: a retraction r: O_Z^n -> T_Z with r|T_Z = id,
  // i.e. lambda_{k,i} in O_Z with sum_k (sum_i lambda_{k,i} t_{j,i}) t_k = t_j.
  size_t s = tangent.size();
  if (s == 0) {
    out.split = true;  // T_Z = 0, trivial retraction
    return out;
  }
  size_t unknowns = s * n;
  std::vector<ModuleVector> columns;
  for (size_t k = 0; k < s; ++k)
    for (size_t i = 0; i < n; ++i) {
      // Column for lambda_{k,i}: stacked (t_{j,i} * t_k)_j over j = 0..s-1.
      ModuleVector col(xr, s * n);
      for (size_t j = 0; j < s; ++j) {
        const Poly& tj_i = tangent[j][i];
        if (tj_i.is_zero()) continue;
        for (size_t v = 0; v < n; ++v) col[j * n + v] = col[j * n + v] + tj_i * tangent[k][v];
      }
      columns.push_back(std::move(col));
    }
  // mod-J freedom in every stacked coordinate
  for (size_t coord = 0; coord < s * n; ++coord)
    for (const auto& g : out.jacobian_ideal) {
      ModuleVector col(xr, s * n);
      col[coord] = g;
      columns.push_back(std::move(col));
    }
  ModuleVector target(xr, s * n);
  for (size_t j = 0; j < s; ++j)
    for (size_t v = 0; v < n; ++v) target[j * n + v] = tangent[j][v];
  (void)unknowns;
  out.split = solve_membership(columns, target, cache).has_value();
  return out;
}

namespace {

// Presented O_Z-module data: generators indexed by subsets, relations over
// the x-ring including J itself.
struct PresentedModule {
  size_t rank = 0;
  std::vector<ModuleVector> relations;
};

PresentedModule omega_b_on_locus(const Superpotential& f, const CriticalLocusAnalysis& locus,
                                 size_t b) {
  const Ring& xr = f.f.ring();
  size_t n = xr.nvars;
  auto subs = subsets_of_size(n, b);
  std::map<std::vector<size_t>, size_t> index;
  for (size_t t = 0; t < subs.size(); ++t) index[subs[t]] = t;
  PresentedModule out;
  out.rank = subs.size();
  for (size_t t = 0; t < subs.size(); ++t)
    for (const auto& g : locus.jacobian_ideal) {
      ModuleVector v(xr, out.rank);
      v[t] = g;
      out.relations.push_back(std::move(v));
    }
  if (b >= 1)
    for (const auto& g : locus.jacobian_ideal)
      for (const auto& J : subsets_of_size(n, b - 1)) {
        ModuleVector v(xr, out.rank);
        for (size_t i = 0; i < n; ++i) {
          int sign = insertion_sign(J, i);
          Poly di = partial_derivative(g, i);
          if (sign == 0 || di.is_zero()) continue;
          std::vector<size_t> Ji(J);
          Ji.insert(std::upper_bound(Ji.begin(), Ji.end(), i), i);
          v[index.at(Ji)] = v[index.at(Ji)] + (sign > 0 ? di : -di);
        }
        if (!v.is_zero()) out.relations.push_back(std::move(v));
      }
  return out;
}

PresentedModule top_normal_power(const Superpotential& f, const CriticalLocusAnalysis& locus) {
  // Lambda^c N = Lambda^c(O_Z^n) / (T_Z wedge Lambda^{c-1}); relations J and
  // t ^ e_K for tangent generators t.
  const Ring& xr = f.f.ring();
  size_t n = xr.nvars, c = locus.codim;
  auto subs = subsets_of_size(n, c);
  std::map<std::vector<size_t>, size_t> index;
  for (size_t t = 0; t < subs.size(); ++t) index[subs[t]] = t;
  PresentedModule out;
  out.rank = subs.size();
  for (size_t t = 0; t < subs.size(); ++t)
    for (const auto& g : locus.jacobian_ideal) {
      ModuleVector v(xr, out.rank);
      v[t] = g;
      out.relations.push_back(std::move(v));
    }
  if (c >= 1)
    for (const auto& tg : locus.tangent_generators)
      for (const auto& K : subsets_of_size(n, c - 1)) {
        ModuleVector v(xr, out.rank);
        for (size_t i = 0; i < n; ++i) {
          int sign = insertion_sign(K, i);
          if (sign == 0 || tg[i].is_zero()) continue;
          std::vector<size_t> Ki(K);
          Ki.insert(std::upper_bound(Ki.begin(), Ki.end(), i), i);
          v[index.at(Ki)] = v[index.at(Ki)] + (sign > 0 ? tg[i] : -tg[i]);
        }
        if (!v.is_zero()) out.relations.push_back(std::move(v));
      }
  return out;
}

PresentedModule tensor(const Ring& ring, const PresentedModule& a, const PresentedModule& b) {
  PresentedModule out;
  out.rank = a.rank * b.rank;
  for (const auto& r : a.relations)
    for (size_t j = 0; j < b.rank; ++j) {
      ModuleVector v(ring, out.rank);
      for (size_t i = 0; i < a.rank; ++i) v[i * b.rank + j] = r[i];
      if (!v.is_zero()) out.relations.push_back(std::move(v));
    }
  for (const auto& r : b.relations)
    for (size_t i = 0; i < a.rank; ++i) {
      ModuleVector v(ring, out.rank);
      for (size_t j = 0; j < b.rank; ++j) v[i * b.rank + j] = r[j];
      if (!v.is_zero()) out.relations.push_back(std::move(v));
    }
  return out;
}

bool dims_agree(const CohomologyProfile& a, const CohomologyProfile& b) {
  if (a.degrees.size() != b.degrees.size()) return false;
  for (size_t i = 0; i < a.degrees.size(); ++i)
    if (!(a.degrees[i].dim == b.degrees[i].dim)) return false;
  return true;
}

}  // namespace

BkData bk_compare(const Superpotential& f, uint64_t degree_cap, GroebnerCache* cache) {
  const Ring& xr = f.f.ring();
  size_t n = xr.nvars;
  BkData out;
  out.locus = critical_locus(f, cache);
  out.twisted = cohomology_profile(build_twisted_pushforward(f, cache), degree_cap, cache);
  out.wedge = cohomology_profile(build_wedge_complex(f), degree_cap, cache);

  out.hypotheses_hold = out.locus.smooth && out.locus.split;
  out.finite = true;
  for (const auto& d : out.twisted.degrees) out.finite = out.finite && d.dim.finite;
  out.profiles_agree = dims_agree(out.twisted, out.wedge);

  out.predicted.resize(n + 1);
  if (out.hypotheses_hold) {
    out.predicted_agrees = true;
    for (size_t i = 0; i <= n; ++i) {
      PredictedDegree& pd = out.predicted[i];
      if (out.locus.empty) {
        pd.applicable = true;
        pd.dim = {true, 0, degree_cap};
      } else {
        uint64_t c = out.locus.codim;
        if (i < c || static_cast<int64_t>(i - c) > out.locus.dim) {
          pd.applicable = true;
          pd.dim = {true, 0, degree_cap};
        } else {
          size_t b = i - c;
          PresentedModule omega = omega_b_on_locus(f, out.locus, b);
          PresentedModule norm = top_normal_power(f, out.locus);
          PresentedModule t = tensor(xr, omega, norm);
          GroebnerBasis gb = module_groebner(xr, t.rank, t.relations, cache);
          pd.applicable = true;
          pd.dim = quotient_k_dimension(t.rank, gb, degree_cap);
          if (!pd.dim.finite) pd.truncated = truncated_dim_table(t.rank, gb, 8);
        }
      }
      if (pd.applicable && pd.dim.finite) {
        const KDim& got = out.twisted.degrees[i].dim;
        if (!(got == pd.dim)) out.predicted_agrees = false;
      }
    }
  }

  auto chi_a = out.twisted.euler_characteristic();
  auto chi_b = out.wedge.euler_characteristic();
  out.euler_agrees = chi_a && chi_b ? *chi_a == *chi_b : true;
  return out;
}

LSupportReport verify_L_support(const Superpotential& f) {
  const Ring& xr = f.f.ring();
  Ring yr(xr.p, xr.nvars, 'y');
  FrobeniusStructure fs(xr.nvars, xr.p);
  Connection line = Connection::twisted_line(f.f);
  LSupportReport out;
  out.curvature_matches = true;
  out.graph_matches = true;
  for (size_t i = 0; i < xr.nvars; ++i) {
    VectorField coord(xr);
    coord.coeffs[i] = Poly::constant(xr, 1);
    PolyMatrix pc = p_curvature(line, coord);
    Poly got = pc.at(0, 0);
    out.p_curvatures.push_back(got);
    Poly expected = -(f.partials[i].pow(xr.p));
    if (!(got == expected)) out.curvature_matches = false;

    // The graph equation: the p-th power folds to a pure p-th power whose
    // dictionary image is exactly df'/dy_i.
    Poly graph = partial_derivative(f.f_twisted, i);
    out.graph_equations.push_back(graph);
    std::vector<Poly> folded = fs.pushforward(f.partials[i].pow(xr.p));
    bool pure = true;
    for (size_t idx = 0; idx < folded.size(); ++idx)
      if (idx != fs.basis_index(Monomial(xr.nvars)) && !folded[idx].is_zero()) pure = false;
    if (!pure || !(folded[fs.basis_index(Monomial(xr.nvars))] == graph))
      out.graph_matches = false;
  }
  out.pass = out.curvature_matches && out.graph_matches;
  return out;
}

}  // namespace chp
