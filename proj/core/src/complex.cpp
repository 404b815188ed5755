#include "chp/complex.hpp"

#include <algorithm>
#include <sstream>

namespace chp {

size_t ChainComplex::index_of(int degree) const {
  if (degree < lo_ || degree > hi())
    throw Error(ErrorKind::structural, "degree out of range");
  return static_cast<size_t>(degree - lo_);
}

bool ChainComplex::has_relations() const {
  for (const auto& r : relations_)
    if (!r.empty()) return true;
  return false;
}

bool ChainComplex::operator==(const ChainComplex& o) const {
  return ring_ == o.ring_ && lo_ == o.lo_ && ranks_ == o.ranks_ && diffs_ == o.diffs_ &&
         relations_ == o.relations_;
}

ChainComplex make_complex(const Ring& ring, int lo, std::vector<size_t> ranks,
                          std::vector<PolyMatrix> diffs,
                          std::vector<std::vector<ModuleVector>> relations,
                          GroebnerCache* cache) {
  if (ranks.empty()) throw Error(ErrorKind::structural, "complex needs at least one degree");
  if (diffs.size() + 1 != ranks.size())
    throw Error(ErrorKind::structural, "complex needs one differential per adjacent pair");
  if (relations.empty()) relations.assign(ranks.size(), {});
  if (relations.size() != ranks.size())
    throw Error(ErrorKind::structural, "relations list shape mismatch");

  for (size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i].ring() != ring) throw Error(ErrorKind::structural, "differential ring mismatch");
    if (diffs[i].cols() != ranks[i] || diffs[i].rows() != ranks[i + 1])
      throw Error(ErrorKind::structural, "differential extent mismatch at degree " +
                                             std::to_string(lo + static_cast<int>(i)));
  }
  for (size_t i = 0; i < relations.size(); ++i)
    for (const auto& r : relations[i])
      if (r.rank() != ranks[i] || r.ring() != ring)
        throw Error(ErrorKind::structural, "relation shape mismatch");

  // d*d = 0, exactly or modulo the target relations; relations must also be
  // carried into relations by d for the quotient differential to exist.
  for (size_t i = 0; i + 1 < diffs.size(); ++i) {
    PolyMatrix square = diffs[i + 1] * diffs[i];
    if (relations[i + 2].empty()) {
      if (!square.is_zero())
        throw Error(ErrorKind::non_complex,
                    "d*d != 0 at degree " + std::to_string(lo + static_cast<int>(i)));
    } else {
      GroebnerBasis rel = module_groebner(ring, ranks[i + 2], relations[i + 2], cache);
      for (size_t c = 0; c < square.cols(); ++c) {
        ModuleVector v(ring, square.rows());
        for (size_t r = 0; r < square.rows(); ++r) v[r] = square.at(r, c);
        if (!in_submodule(v, rel))
          throw Error(ErrorKind::non_complex,
                      "d*d != 0 modulo relations at degree " +
                          std::to_string(lo + static_cast<int>(i)));
      }
    }
  }
  for (size_t i = 0; i + 1 < ranks.size(); ++i) {
    if (relations[i].empty()) continue;
    GroebnerBasis rel = module_groebner(ring, ranks[i + 1], relations[i + 1], cache);
    for (const auto& r : relations[i]) {
      std::vector<Poly> img = diffs[i].apply(r.components());
      if (!in_submodule(ModuleVector(ring, img), rel))
        throw Error(ErrorKind::non_complex,
                    "differential does not preserve relations at degree " +
                        std::to_string(lo + static_cast<int>(i)));
    }
  }

  ChainComplex c;
  c.ring_ = ring;
  c.lo_ = lo;
  c.ranks_ = std::move(ranks);
  c.diffs_ = std::move(diffs);
  c.relations_ = std::move(relations);
  return c;
}

std::vector<std::vector<size_t>> subsets_of_size(size_t n, size_t q) {
  std::vector<std::vector<size_t>> out;
  if (q > n) return out;
  std::vector<size_t> cur(q);
  for (size_t i = 0; i < q; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    if (q == 0) break;
    size_t i = q;
    while (i-- > 0) {
      if (cur[i] + 1 <= n - (q - i)) {
        ++cur[i];
        for (size_t j = i + 1; j < q; ++j) cur[j] = cur[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
  return out;
}

int insertion_sign(const std::vector<size_t>& I, size_t i) {
  size_t before = 0;
  for (size_t j : I) {
    if (j < i) ++before;
    if (j == i) return 0;
  }
  return before % 2 == 0 ? 1 : -1;
}

ChainComplex koszul_complex(const std::vector<Poly>& elements) {
  if (elements.empty()) throw Error(ErrorKind::structural, "Koszul complex needs elements");
  const Ring& ring = elements[0].ring();
  for (const auto& f : elements)
    if (f.ring() != ring) throw Error(ErrorKind::structural, "Koszul element ring mismatch");
  size_t m = elements.size();

  std::vector<size_t> ranks;
  std::vector<PolyMatrix> diffs;
  std::vector<std::vector<std::vector<size_t>>> bases;
  for (size_t q = 0; q <= m; ++q) {
    bases.push_back(subsets_of_size(m, q));
    ranks.push_back(bases.back().size());
  }
  for (size_t q = 0; q < m; ++q) {
    PolyMatrix d(ranks[q + 1], ranks[q], ring);
    std::map<std::vector<size_t>, size_t> index;
    for (size_t t = 0; t < bases[q + 1].size(); ++t) index[bases[q + 1][t]] = t;
    for (size_t s = 0; s < bases[q].size(); ++s) {
      const auto& I = bases[q][s];
      for (size_t i = 0; i < m; ++i) {
        int sign = insertion_sign(I, i);
        if (sign == 0 || elements[i].is_zero()) continue;
        std::vector<size_t> J(I);
        J.insert(std::upper_bound(J.begin(), J.end(), i), i);
        Poly entry = sign > 0 ? elements[i] : -elements[i];
        d.at(index.at(J), s) = d.at(index.at(J), s) + entry;
      }
    }
    diffs.push_back(std::move(d));
  }
  return make_complex(ring, 0, std::move(ranks), std::move(diffs));
}

std::vector<KDim> CohomologyProfile::dims() const {
  std::vector<KDim> out;
  for (const auto& d : degrees) out.push_back(d.dim);
  return out;
}

std::optional<int64_t> CohomologyProfile::euler_characteristic() const {
  int64_t chi = 0;
  int sign = (lo % 2 == 0) ? 1 : -1;
  for (const auto& d : degrees) {
    if (!d.dim.finite) return std::nullopt;
    chi += sign * static_cast<int64_t>(d.dim.dim);
    sign = -sign;
  }
  return chi;
}

namespace {

// Relations of the chosen kernel generators modulo the incoming image and
// the degree's own presentation.
std::vector<ModuleVector> relations_of_generators(const Ring& ring,
                                                  const std::vector<ModuleVector>& gens,
                                                  const std::vector<ModuleVector>& targets,
                                                  size_t ambient_rank, GroebnerCache* cache) {
  PolyMatrix gen_matrix(ambient_rank, gens.size(), ring);
  for (size_t j = 0; j < gens.size(); ++j)
    for (size_t i = 0; i < ambient_rank; ++i) gen_matrix.at(i, j) = gens[j][i];
  return preimage_of_submodule(gen_matrix, targets, cache);
}

}  // namespace

CohomologyProfile cohomology_profile(const ChainComplex& c, uint64_t degree_cap,
                                     GroebnerCache* cache) {
  const Ring& ring = c.ring();
  CohomologyProfile profile;
  profile.lo = c.lo();

  for (int deg = c.lo(); deg <= c.hi(); ++deg) {
    size_t i = c.index_of(deg);
    size_t rank = c.ranks()[i];
    DegreeCohomology out;

    if (rank == 0) {
      out.dim = {true, 0, degree_cap};
      out.free_rank = 0;
      profile.degrees.push_back(std::move(out));
      continue;
    }

    // Kernel generators of the quotient differential.
    std::vector<ModuleVector> kernel_gens;
    if (deg == c.hi()) {
      for (size_t j = 0; j < rank; ++j)
        kernel_gens.push_back(ModuleVector::unit(ring, rank, j));
    } else {
      kernel_gens = preimage_of_submodule(c.diff(deg), c.relations_at(deg + 1), cache);
    }

    // Incoming image plus this degree's presentation.
    std::vector<ModuleVector> targets = c.relations_at(deg);
    if (deg > c.lo()) {
      const PolyMatrix& d_in = c.diff(deg - 1);
      for (size_t j = 0; j < d_in.cols(); ++j)
        targets.push_back(ModuleVector(ring, d_in.column(j)));
    }

    std::vector<ModuleVector> gens = kernel_gens;
    std::vector<ModuleVector> rel =
        module_groebner(ring, gens.size(),
                        relations_of_generators(ring, gens, targets, rank, cache), cache)
            .generators();

    // Eliminate generators that a unit relation entry makes redundant; the
    // remaining presentation has no constant entries, so it is free iff it
    // has no relations at all.
    while (true) {
      size_t hit_rel = rel.size(), hit_pos = 0;
      for (size_t r = 0; r < rel.size() && hit_rel == rel.size(); ++r)
        for (size_t j = 0; j < gens.size(); ++j) {
          const Poly& entry = rel[r][j];
          if (!entry.is_zero() && entry.is_constant()) {
            hit_rel = r;
            hit_pos = j;
            break;
          }
        }
      if (hit_rel == rel.size()) break;

      uint32_t c_inv = fp_inv(rel[hit_rel][hit_pos].coeff(Monomial(ring.nvars)), ring.p);
      ModuleVector pivot = rel[hit_rel];
      std::vector<ModuleVector> next_rel;
      for (size_t r = 0; r < rel.size(); ++r) {
        if (r == hit_rel) continue;
        ModuleVector w = rel[r] - pivot.times(rel[r][hit_pos].scaled(c_inv));
        ModuleVector shrunk(ring, gens.size() - 1);
        size_t t = 0;
        for (size_t j = 0; j < gens.size(); ++j)
          if (j != hit_pos) shrunk[t++] = w[j];
        if (!shrunk.is_zero()) next_rel.push_back(std::move(shrunk));
      }
      gens.erase(gens.begin() + static_cast<int64_t>(hit_pos));
      rel = module_groebner(ring, gens.size(), std::move(next_rel), cache).generators();
    }

    GroebnerBasis rel_gb(ring, gens.size(), rel);
    out.dim = quotient_k_dimension(gens.size(), rel_gb, degree_cap);
    if (rel.empty()) out.free_rank = gens.size();
    out.generators = gens;
    profile.degrees.push_back(std::move(out));
  }
  return profile;
}

const char* to_string(ProfileComparison v) {
  switch (v) {
    case ProfileComparison::equal: return "equal";
    case ProfileComparison::first_dominates: return "first_dominates";
    case ProfileComparison::mixed: return "mixed";
  }
  return "unknown";
}

ProfileComparison compare_profiles(const CohomologyProfile& a, const CohomologyProfile& b) {
  if (a.lo != b.lo || a.degrees.size() != b.degrees.size())
    throw Error(ErrorKind::structural, "profiles cover different degree ranges");
  bool some_greater = false, some_less = false;
  for (size_t i = 0; i < a.degrees.size(); ++i) {
    const KDim &x = a.degrees[i].dim, &y = b.degrees[i].dim;
    if (x == y) continue;
    if (!x.finite && y.finite) some_greater = true;
    else if (x.finite && !y.finite) some_less = true;
    else if (x.dim > y.dim) some_greater = true;
    else some_less = true;
  }
  if (!some_greater && !some_less) return ProfileComparison::equal;
  if (some_greater && !some_less) return ProfileComparison::first_dominates;
  return ProfileComparison::mixed;
}

std::string complex_to_text(const ChainComplex& c) {
  std::ostringstream out;
  out << "ring " << c.ring().p << " " << c.ring().nvars << " " << c.ring().prefix << "\n";
  out << "lo " << c.lo() << "\n";
  out << "ranks";
  for (size_t r : c.ranks()) out << " " << r;
  out << "\n";
  for (int deg = c.lo(); deg < c.hi(); ++deg) {
    const PolyMatrix& d = c.diff(deg);
    out << "diff " << deg << "\n";
    for (size_t i = 0; i < d.rows(); ++i) {
      for (size_t j = 0; j < d.cols(); ++j) {
        if (j) out << " ; ";
        out << d.at(i, j).to_string();
      }
      out << "\n";
    }
  }
  for (int deg = c.lo(); deg <= c.hi(); ++deg) {
    const auto& rels = c.relations_at(deg);
    if (rels.empty()) continue;
    out << "relations " << deg << " " << rels.size() << "\n";
    for (const auto& r : rels) {
      for (size_t i = 0; i < r.rank(); ++i) {
        if (i) out << " ; ";
        out << r[i].to_string();
      }
      out << "\n";
    }
  }
  return out.str();
}

ChainComplex complex_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  if (!(in >> tok) || tok != "ring") throw Error(ErrorKind::parse, "expected 'ring'");
  uint32_t p = 0, nvars = 0;
  char prefix = 'x';
  if (!(in >> p >> nvars >> prefix)) throw Error(ErrorKind::parse, "bad ring line");
  Ring ring(p, nvars, prefix);
  if (!(in >> tok) || tok != "lo") throw Error(ErrorKind::parse, "expected 'lo'");
  int lo = 0;
  if (!(in >> lo)) throw Error(ErrorKind::parse, "bad lo line");
  if (!(in >> tok) || tok != "ranks") throw Error(ErrorKind::parse, "expected 'ranks'");
  std::string line;
  std::getline(in, line);
  std::istringstream rl(line);
  std::vector<size_t> ranks;
  size_t r;
  while (rl >> r) ranks.push_back(r);
  if (ranks.empty()) throw Error(ErrorKind::parse, "empty ranks");

  std::vector<PolyMatrix> diffs;
  for (size_t i = 0; i + 1 < ranks.size(); ++i)
    diffs.emplace_back(ranks[i + 1], ranks[i], ring);
  std::vector<std::vector<ModuleVector>> relations(ranks.size());

  auto read_row = [&](const std::string& row_text, size_t expect) {
    std::vector<Poly> polys;
    size_t start = 0;
    while (start <= row_text.size()) {
      size_t sep = row_text.find(" ; ", start);
      std::string cell = row_text.substr(
          start, sep == std::string::npos ? std::string::npos : sep - start);
      polys.push_back(parse_poly(cell.empty() ? "0" : cell, ring));
      if (sep == std::string::npos) break;
      start = sep + 3;
    }
    if (polys.size() != expect) throw Error(ErrorKind::parse, "row arity mismatch");
    return polys;
  };

  while (in >> tok) {
    if (tok == "diff") {
      int deg = 0;
      if (!(in >> deg)) throw Error(ErrorKind::parse, "bad diff header");
      size_t idx = static_cast<size_t>(deg - lo);
      if (idx + 1 >= ranks.size()) throw Error(ErrorKind::parse, "diff degree out of range");
      std::getline(in, line);
      for (size_t i = 0; i < ranks[idx + 1]; ++i) {
        if (!std::getline(in, line)) throw Error(ErrorKind::parse, "truncated diff block");
        std::vector<Poly> row = read_row(line, ranks[idx]);
        for (size_t j = 0; j < ranks[idx]; ++j) diffs[idx].at(i, j) = row[j];
      }
    } else if (tok == "relations") {
      int deg = 0;
      size_t count = 0;
      if (!(in >> deg >> count)) throw Error(ErrorKind::parse, "bad relations header");
      size_t idx = static_cast<size_t>(deg - lo);
      if (idx >= ranks.size()) throw Error(ErrorKind::parse, "relations degree out of range");
      std::getline(in, line);
      for (size_t k = 0; k < count; ++k) {
        if (!std::getline(in, line)) throw Error(ErrorKind::parse, "truncated relations block");
        relations[idx].emplace_back(ring, read_row(line, ranks[idx]));
      }
    } else {
      throw Error(ErrorKind::parse, "unexpected token '" + tok + "'");
    }
  }
  return make_complex(ring, lo, std::move(ranks), std::move(diffs), std::move(relations));
}

}  // namespace chp
