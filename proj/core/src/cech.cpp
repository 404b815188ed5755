#include "chp/cech.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <sstream>

#include "chp/complex.hpp"

namespace chp {

PlaneCurve PlaneCurve::make(const Poly& g, GroebnerCache* cache) {
  const Ring& r = g.ring();
  if (r.nvars != 3) throw Error(ErrorKind::structural, "plane curve needs 3 coordinates");
  if (g.is_zero() || g.is_constant())
    throw Error(ErrorKind::structural, "plane curve equation must be nonconstant");
  uint64_t d = g.degree();
  for (const auto& [m, c] : g.terms())
    if (m.degree() != d)
      throw Error(ErrorKind::structural, "plane curve equation must be homogeneous");

  std::vector<ModuleVector> gens;
  gens.emplace_back(r, std::vector<Poly>{g});
  for (size_t i = 0; i < 3; ++i) {
    Poly di = partial_derivative(g, i);
    if (!di.is_zero()) gens.emplace_back(r, std::vector<Poly>{di});
  }
  GroebnerBasis gb = module_groebner(r, 1, std::move(gens), cache);
  KDim q = quotient_k_dimension(1, gb);
  if (!q.finite)
    throw Error(ErrorKind::non_smooth,
                "plane curve fails the smoothness certificate: " + g.to_string());
  return PlaneCurve(g, static_cast<uint32_t>(d));
}

CechTarget CechTarget::projective_space(uint32_t n, uint32_t p) {
  if (n < 1 || n > 2) throw Error(ErrorKind::structural, "only P^1 and P^2 are supported");
  CechTarget t;
  t.ncoords = n + 1;
  t.p = p;
  if (!is_prime(p)) throw Error(ErrorKind::structural, "modulus must be prime");
  return t;
}

CechTarget CechTarget::plane_curve(const PlaneCurve& c) {
  CechTarget t;
  t.ncoords = 3;
  t.p = c.p();
  t.curve = c;
  return t;
}

std::string CechTarget::describe() const {
  if (curve) return "V(" + curve->equation().to_string() + ") in P^2";
  return ncoords == 2 ? "P^1" : "P^2";
}

namespace {

constexpr size_t kMaxCoords = 3;

// A Laurent term X^m dX_J in the homogeneous frame; J is a coordinate
// bitmask.  Sections of Omega^q over a chart tuple are spans of such keys
// with sum(m) = -q and denominators confined to the tuple.
struct Key {
  std::array<int16_t, kMaxCoords> m{0, 0, 0};
  uint8_t form = 0;

  bool operator<(const Key& o) const {
    if (form != o.form) return form < o.form;
    return m < o.m;
  }
  bool operator==(const Key& o) const { return form == o.form && m == o.m; }
};

struct TermList {  // exponent/coefficient pairs of a fixed polynomial
  std::vector<std::pair<std::array<int16_t, kMaxCoords>, uint32_t>> terms;
};

TermList term_list(const Poly& f) {
  TermList out;
  for (const auto& [mono, c] : f.terms()) {
    std::array<int16_t, kMaxCoords> e{0, 0, 0};
    for (size_t i = 0; i < mono.nvars(); ++i) e[i] = static_cast<int16_t>(mono[i]);
    out.terms.push_back({e, c});
  }
  return out;
}

// The denominator-constrained Laurent box: m_j in [-box, box], m_j >= 0 off
// the tuple, with a fixed coordinate sum.
void enumerate_exponents(uint32_t ncoords, uint8_t tuple_mask, int32_t box, int32_t sum,
                         std::vector<std::array<int16_t, kMaxCoords>>& out) {
  std::array<int16_t, kMaxCoords> m{0, 0, 0};
  auto lo = [&](size_t j) { return (tuple_mask & (1u << j)) ? -box : 0; };
  std::function<void(size_t, int32_t)> rec = [&](size_t j, int32_t remaining) {
    if (j + 1 == ncoords) {
      if (remaining >= lo(j) && remaining <= box) {
        m[j] = static_cast<int16_t>(remaining);
        out.push_back(m);
      }
      return;
    }
    for (int32_t v = lo(j); v <= box; ++v) {
      m[j] = static_cast<int16_t>(v);
      rec(j + 1, remaining - v);
    }
  };
  rec(0, sum);
}

// Sparse ambient vector, accumulated then frozen into model coordinates.
using Sparse = std::map<Key, uint32_t>;

void sparse_add(Sparse& v, const Key& k, uint32_t c, uint32_t p) {
  if (c % p == 0) return;
  auto [it, fresh] = v.emplace(k, c % p);
  if (!fresh) {
    it->second = fp_add(it->second, c % p, p);
    if (it->second == 0) v.erase(it);
  }
}

// One chart-tuple model of Omega^q: ambient keys, a relation space R, and
// an echelonized quotient basis of (kernel of iota_E mod G) / R.
struct SpaceModel {
  std::vector<Key> keys;
  std::map<Key, size_t> index;
  ColSpace rel;
  ColSpace quo;
  uint32_t p = 2;

  SpaceModel() : rel(0, 2), quo(0, 2) {}

  size_t dim() const { return quo.size(); }

  std::vector<uint32_t> to_ambient(const Sparse& v) const {
    std::vector<uint32_t> out(keys.size(), 0);
    for (const auto& [k, c] : v) {
      auto it = index.find(k);
      if (it == index.end())
        throw Error(ErrorKind::structural, "cech term escaped its truncation box");
      out[it->second] = c;
    }
    return out;
  }

  // Quotient coordinates of an ambient vector; it must lie in K + R.
  std::vector<uint32_t> coords(std::vector<uint32_t> v) const {
    rel.reduce(v);
    std::vector<uint32_t> c = quo.reduce(v);
    for (uint32_t x : v)
      if (x) throw Error(ErrorKind::structural, "cech vector not in its model space");
    return c;
  }
};

struct Maps {
  // Column-sparse matrices between grid blocks.
  size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<size_t, uint32_t>>> columns;
};

struct Grid {
  const CechTarget* target;
  uint32_t box_base;  // D
  uint32_t p;
  uint32_t ncoords;
  uint32_t qmax;
  std::vector<std::vector<std::vector<size_t>>> tuples;  // [k] -> list of index tuples
  std::vector<std::vector<uint8_t>> tuple_masks;          // [k] -> masks
  // spaces[k][q][tuple]
  std::vector<std::vector<std::vector<SpaceModel>>> spaces;
  std::vector<std::vector<size_t>> block_dim;             // [k][q]
  std::vector<std::vector<std::vector<size_t>>> offsets;  // [k][q][tuple]
};

int32_t box_for(uint32_t base, uint32_t q) { return static_cast<int32_t>(base + q); }

uint8_t mask_of(const std::vector<size_t>& tuple) {
  uint8_t m = 0;
  for (size_t j : tuple) m |= static_cast<uint8_t>(1u << j);
  return m;
}

// Relation generators G * (X^mu dX_J) whose every term stays inside the
// model; under-quotienting at the boundary is absorbed by stabilization.
void push_g_relations(SpaceModel& model, const TermList& g, uint32_t gdeg, uint8_t tuple_mask,
                      uint32_t ncoords, int32_t box, int32_t q, uint32_t p) {
  std::vector<std::array<int16_t, kMaxCoords>> mus;
  enumerate_exponents(ncoords, tuple_mask, box + static_cast<int32_t>(gdeg),
                      -q - static_cast<int32_t>(gdeg), mus);
  std::vector<uint8_t> forms;
  for (const auto& [key, idx] : model.index) {
    (void)idx;
    if (forms.empty() || forms.back() != key.form) forms.push_back(key.form);
  }
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());

  for (uint8_t form : forms)
    for (const auto& mu : mus) {
      Sparse v;
      bool inside = true;
      for (const auto& [ge, gc] : g.terms) {
        Key k;
        k.form = form;
        for (size_t j = 0; j < ncoords; ++j)
          k.m[j] = static_cast<int16_t>(mu[j] + ge[j]);
        if (!model.index.count(k)) {
          inside = false;
          break;
        }
        sparse_add(v, k, gc, p);
      }
      if (!inside || v.empty()) continue;
      model.rel.insert(model.to_ambient(v));
    }
}

// Conormal relations X^mu * dG on the 1-form model.
void push_conormal_relations(SpaceModel& model, const std::vector<TermList>& dg,
                             uint32_t gdeg, uint8_t tuple_mask, uint32_t ncoords, int32_t box,
                             uint32_t p) {
  std::vector<std::array<int16_t, kMaxCoords>> mus;
  enumerate_exponents(ncoords, tuple_mask, box + static_cast<int32_t>(gdeg),
                      -static_cast<int32_t>(gdeg), mus);
  for (const auto& mu : mus) {
    Sparse v;
    bool inside = true;
    for (size_t j = 0; j < ncoords && inside; ++j)
      for (const auto& [ge, gc] : dg[j].terms) {
        Key k;
        k.form = static_cast<uint8_t>(1u << j);
        for (size_t t = 0; t < ncoords; ++t)
          k.m[t] = static_cast<int16_t>(mu[t] + ge[t]);
        if (!model.index.count(k)) {
          inside = false;
          break;
        }
        sparse_add(v, k, gc, p);
      }
    if (!inside || v.empty()) continue;
    model.rel.insert(model.to_ambient(v));
  }
}

SpaceModel build_space(const CechTarget& target, uint8_t tuple_mask, uint32_t q,
                       uint32_t box_base) {
  const uint32_t p = target.p;
  const uint32_t n = target.ncoords;
  int32_t box = box_for(box_base, q);
  SpaceModel model;
  model.p = p;

  // Ambient keys: subsets J of size q, exponents with sum -q.
  for (const auto& J : subsets_of_size(n, q)) {
    uint8_t jm = mask_of(J);
    std::vector<std::array<int16_t, kMaxCoords>> ms;
    enumerate_exponents(n, tuple_mask, box, -static_cast<int32_t>(q), ms);
    for (const auto& m : ms) {
      Key k;
      k.form = jm;
      k.m = m;
      model.keys.push_back(k);
    }
  }
  std::sort(model.keys.begin(), model.keys.end());
  for (size_t i = 0; i < model.keys.size(); ++i) model.index[model.keys[i]] = i;
  model.rel = ColSpace(model.keys.size(), p);
  model.quo = ColSpace(model.keys.size(), p);

  TermList g;
  std::vector<TermList> dg;
  uint32_t gdeg = 0;
  if (target.curve) {
    g = term_list(target.curve->equation());
    gdeg = target.curve->degree();
    for (size_t j = 0; j < n; ++j)
      dg.push_back(term_list(partial_derivative(target.curve->equation(), j)));
  }

  // Relations in this model.
  if (target.curve) {
    push_g_relations(model, g, gdeg, tuple_mask, n, box, static_cast<int32_t>(q), p);
    if (q == 1) push_conormal_relations(model, dg, gdeg, tuple_mask, n, box, p);
  }

  if (q == 0) {
    // Functions: the kernel condition is vacuous.
    for (size_t i = 0; i < model.keys.size(); ++i) {
      std::vector<uint32_t> v(model.keys.size(), 0);
      v[i] = 1;
      model.rel.reduce(v);
      model.quo.insert(std::move(v));
    }
    return model;
  }

  // Kernel of iota_E modulo G in the function level one degree up.
  int32_t fbox = box + 1;
  std::vector<std::array<int16_t, kMaxCoords>> fexp;
  enumerate_exponents(n, tuple_mask, fbox, -static_cast<int32_t>(q) + 1, fexp);
  std::map<std::array<int16_t, kMaxCoords>, size_t> findex;
  for (size_t i = 0; i < fexp.size(); ++i) findex[fexp[i]] = i;

  ColSpace target_rel(fexp.size(), p);
  if (target.curve) {
    std::vector<std::array<int16_t, kMaxCoords>> mus;
    enumerate_exponents(n, tuple_mask, fbox + static_cast<int32_t>(gdeg),
                        -static_cast<int32_t>(q) + 1 - static_cast<int32_t>(gdeg), mus);
    for (const auto& mu : mus) {
      std::vector<uint32_t> v(fexp.size(), 0);
      bool inside = true;
      for (const auto& [ge, gc] : g.terms) {
        std::array<int16_t, kMaxCoords> w{0, 0, 0};
        for (size_t j = 0; j < n; ++j) w[j] = static_cast<int16_t>(mu[j] + ge[j]);
        auto it = findex.find(w);
        if (it == findex.end()) {
          inside = false;
          break;
        }
        v[it->second] = fp_add(v[it->second], gc, p);
      }
      if (!inside) continue;
      target_rel.insert(std::move(v));
    }
  }

  // Matrix of iota_E with targets reduced mod G; kernel via rref.
  FpMatrix iota(fexp.size(), model.keys.size(), p);
  for (size_t col = 0; col < model.keys.size(); ++col) {
    const Key& k = model.keys[col];
    std::vector<uint32_t> image(fexp.size(), 0);
    size_t pos = 0;
    for (size_t j = 0; j < n; ++j) {
      if (!(k.form & (1u << j))) continue;
      std::array<int16_t, kMaxCoords> w = k.m;
      w[j] = static_cast<int16_t>(w[j] + 1);
      auto it = findex.find(w);
      if (it == findex.end())
        throw Error(ErrorKind::structural, "iota_E image escaped the function box");
      uint32_t c = (pos % 2 == 0) ? 1 : p - 1;
      image[it->second] = fp_add(image[it->second], c, p);
      ++pos;
    }
    target_rel.reduce(image);
    for (size_t r = 0; r < fexp.size(); ++r) iota.set(r, col, image[r]);
  }
  RrefResult rr = rref(iota);
  for (auto& kv : rr.kernel) {
    model.rel.reduce(kv);
    model.quo.insert(std::move(kv));
  }
  return model;
}

// Restriction (inclusion) of a source model vector into a wider tuple.
std::vector<uint32_t> inject(const SpaceModel& src, const SpaceModel& dst,
                             const std::vector<uint32_t>& v) {
  std::vector<uint32_t> out(dst.keys.size(), 0);
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    auto it = dst.index.find(src.keys[i]);
    if (it == dst.index.end())
      throw Error(ErrorKind::structural, "restriction escaped the target box");
    out[it->second] = v[i];
  }
  return out;
}

// Ambient exterior derivative into the q+1 model of the same tuple.
std::vector<uint32_t> ambient_d(const SpaceModel& src, const SpaceModel& dst,
                                const std::vector<uint32_t>& v, uint32_t ncoords, uint32_t p) {
  Sparse out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i]) continue;
    const Key& k = src.keys[i];
    std::vector<size_t> J;
    for (size_t j = 0; j < ncoords; ++j)
      if (k.form & (1u << j)) J.push_back(j);
    for (size_t j = 0; j < ncoords; ++j) {
      if (k.form & (1u << j)) continue;
      if (k.m[j] == 0) continue;
      int sign = insertion_sign(J, j);
      uint32_t c = fp_reduce(static_cast<int64_t>(k.m[j]), p);
      if (c == 0) continue;
      if (sign < 0) c = fp_neg(c, p);
      Key t;
      t.form = static_cast<uint8_t>(k.form | (1u << j));
      t.m = k.m;
      t.m[j] = static_cast<int16_t>(t.m[j] - 1);
      sparse_add(out, t, fp_mul(c, v[i], p), p);
    }
  }
  return dst.to_ambient(out);
}

Grid build_grid(const CechTarget& target, uint32_t box_base) {
  Grid grid;
  grid.target = &target;
  grid.box_base = box_base;
  grid.p = target.p;
  grid.ncoords = target.ncoords;
  grid.qmax = target.dim();
  uint32_t n = target.ncoords;

  for (uint32_t k = 0; k < n; ++k) {
    grid.tuples.push_back(subsets_of_size(n, k + 1));
    grid.tuple_masks.emplace_back();
    for (const auto& t : grid.tuples[k]) grid.tuple_masks[k].push_back(mask_of(t));
  }

  grid.spaces.resize(n);
  grid.block_dim.assign(n, std::vector<size_t>(grid.qmax + 1, 0));
  grid.offsets.resize(n);
  for (uint32_t k = 0; k < n; ++k) {
    grid.spaces[k].resize(grid.qmax + 1);
    grid.offsets[k].resize(grid.qmax + 1);
    for (uint32_t q = 0; q <= grid.qmax; ++q) {
      size_t off = 0;
      for (size_t t = 0; t < grid.tuples[k].size(); ++t) {
        grid.spaces[k][q].push_back(build_space(target, grid.tuple_masks[k][t], q, box_base));
        grid.offsets[k][q].push_back(off);
        off += grid.spaces[k][q].back().dim();
      }
      grid.block_dim[k][q] = off;
    }
  }
  return grid;
}

// Cech differential C^{k,q} -> C^{k+1,q} as a dense matrix.
FpMatrix cech_map(const Grid& grid, uint32_t k, uint32_t q) {
  size_t rows = grid.block_dim[k + 1][q], cols = grid.block_dim[k][q];
  FpMatrix m(rows, cols, grid.p);
  const auto& tgt_tuples = grid.tuples[k + 1];
  for (size_t tt = 0; tt < tgt_tuples.size(); ++tt) {
    const auto& T = tgt_tuples[tt];
    const SpaceModel& dst = grid.spaces[k + 1][q][tt];
    for (size_t a = 0; a < T.size(); ++a) {
      std::vector<size_t> S(T);
      S.erase(S.begin() + static_cast<int64_t>(a));
      auto it = std::find(grid.tuples[k].begin(), grid.tuples[k].end(), S);
      size_t st = static_cast<size_t>(it - grid.tuples[k].begin());
      const SpaceModel& src = grid.spaces[k][q][st];
      uint32_t sign = (a % 2 == 0) ? 1 : grid.p - 1;
      for (size_t b = 0; b < src.dim(); ++b) {
        std::vector<uint32_t> coords = dst.coords(inject(src, dst, src.quo.basis_vector(b)));
        for (size_t r = 0; r < coords.size(); ++r) {
          if (!coords[r]) continue;
          size_t row = grid.offsets[k + 1][q][tt] + r;
          size_t col = grid.offsets[k][q][st] + b;
          m.set(row, col, fp_add(m.at(row, col), fp_mul(coords[r], sign, grid.p), grid.p));
        }
      }
    }
  }
  return m;
}

// De Rham differential C^{k,q} -> C^{k,q+1}, unsigned.
FpMatrix derham_map(const Grid& grid, uint32_t k, uint32_t q) {
  size_t rows = grid.block_dim[k][q + 1], cols = grid.block_dim[k][q];
  FpMatrix m(rows, cols, grid.p);
  for (size_t t = 0; t < grid.tuples[k].size(); ++t) {
    const SpaceModel& src = grid.spaces[k][q][t];
    const SpaceModel& dst = grid.spaces[k][q + 1][t];
    for (size_t b = 0; b < src.dim(); ++b) {
      std::vector<uint32_t> coords =
          dst.coords(ambient_d(src, dst, src.quo.basis_vector(b), grid.ncoords, grid.p));
      for (size_t r = 0; r < coords.size(); ++r) {
        if (!coords[r]) continue;
        m.set(grid.offsets[k][q + 1][t] + r, grid.offsets[k][q][t] + b, coords[r]);
      }
    }
  }
  return m;
}

// Total-complex differential T^i -> T^{i+1}, with the (-1)^k sign on d.
FpMatrix total_map(const Grid& grid, const std::vector<std::vector<FpMatrix>>& cech,
                   const std::vector<std::vector<FpMatrix>>& derham, uint32_t i) {
  uint32_t n = grid.ncoords;
  auto blocks_of = [&](uint32_t total) {
    std::vector<std::pair<uint32_t, uint32_t>> blocks;  // (k, q)
    for (uint32_t k = 0; k < n; ++k)
      if (total >= k && total - k <= grid.qmax) blocks.push_back({k, total - k});
    return blocks;
  };
  auto src_blocks = blocks_of(i), dst_blocks = blocks_of(i + 1);
  std::vector<size_t> src_off(src_blocks.size() + 1, 0), dst_off(dst_blocks.size() + 1, 0);
  for (size_t b = 0; b < src_blocks.size(); ++b)
    src_off[b + 1] = src_off[b] + grid.block_dim[src_blocks[b].first][src_blocks[b].second];
  for (size_t b = 0; b < dst_blocks.size(); ++b)
    dst_off[b + 1] = dst_off[b] + grid.block_dim[dst_blocks[b].first][dst_blocks[b].second];

  FpMatrix m(dst_off.back(), src_off.back(), grid.p);
  for (size_t sb = 0; sb < src_blocks.size(); ++sb) {
    auto [k, q] = src_blocks[sb];
    for (size_t db = 0; db < dst_blocks.size(); ++db) {
      auto [k2, q2] = dst_blocks[db];
      const FpMatrix* block = nullptr;
      uint32_t sign = 1;
      if (k2 == k + 1 && q2 == q) block = &cech[k][q];
      else if (k2 == k && q2 == q + 1) {
        block = &derham[k][q];
        sign = (k % 2 == 0) ? 1 : grid.p - 1;
      } else {
        continue;
      }
      for (size_t r = 0; r < block->rows(); ++r)
        for (size_t c = 0; c < block->cols(); ++c) {
          uint32_t v = block->at(r, c);
          if (v) m.set(dst_off[db] + r, src_off[sb] + c, fp_mul(v, sign, grid.p));
        }
    }
  }
  return m;
}

CechSnapshot snapshot(const CechTarget& target, uint32_t truncation) {
  Grid grid = build_grid(target, truncation);
  uint32_t n = grid.ncoords;

  std::vector<std::vector<FpMatrix>> cech(n), derham(n);
  for (uint32_t k = 0; k < n; ++k) {
    for (uint32_t q = 0; q <= grid.qmax; ++q) {
      if (k + 1 < n) cech[k].push_back(cech_map(grid, k, q));
      else cech[k].emplace_back(0, grid.block_dim[k][q], grid.p);
      if (q < grid.qmax) derham[k].push_back(derham_map(grid, k, q));
      else derham[k].emplace_back(0, grid.block_dim[k][q], grid.p);
    }
  }

  CechSnapshot snap;
  snap.truncation = truncation;
  snap.space_dims.assign(n, {});
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t q = 0; q <= grid.qmax; ++q) snap.space_dims[k].push_back(grid.block_dim[k][q]);

  // Hodge numbers: cohomology of each fixed-q row under the Cech maps.
  snap.hodge.assign(grid.qmax + 1, std::vector<uint64_t>(n, 0));
  for (uint32_t q = 0; q <= grid.qmax; ++q) {
    std::vector<size_t> ranks(n, 0);
    for (uint32_t k = 0; k + 1 < n; ++k) ranks[k] = rank(cech[k][q]);
    for (uint32_t k = 0; k < n; ++k) {
      size_t dim = grid.block_dim[k][q];
      size_t out_rank = (k + 1 < n) ? ranks[k] : 0;
      size_t in_rank = (k > 0) ? ranks[k - 1] : 0;
      snap.hodge[q][k] = dim - out_rank - in_rank;
    }
  }

  // de Rham: cohomology of the total complex.
  uint32_t top = (n - 1) + grid.qmax;
  std::vector<FpMatrix> totals;
  for (uint32_t i = 0; i < top; ++i) totals.push_back(total_map(grid, cech, derham, i));
  std::vector<size_t> tranks;
  for (auto& t : totals) tranks.push_back(rank(t));
  snap.derham.assign(top + 1, 0);
  for (uint32_t i = 0; i <= top; ++i) {
    size_t dim = i < top ? totals[i].cols() : totals[top - 1].rows();
    size_t out_rank = i < top ? tranks[i] : 0;
    size_t in_rank = i > 0 ? tranks[i - 1] : 0;
    snap.derham[i] = dim - out_rank - in_rank;
  }
  return snap;
}

uint32_t default_truncation(const CechTarget& target) {
  if (target.curve) return 2 * target.curve->degree() + 2;
  return target.ncoords + 2;
}

}  // namespace

CechResult compute_cech(const CechTarget& target, const CechConfig& config) {
  uint32_t d0 = config.truncation ? config.truncation : default_truncation(target);
  uint32_t window = std::max<uint32_t>(config.window, 2);
  CechResult out;
  for (uint32_t w = 0; w < window; ++w) out.window.push_back(snapshot(target, d0 + w));
  out.stabilized = true;
  for (size_t w = 1; w < out.window.size(); ++w) {
    if (out.window[w].hodge != out.window[0].hodge) out.stabilized = false;
    if (out.window[w].derham != out.window[0].derham) out.stabilized = false;
  }
  return out;
}

namespace {

[[noreturn]] void throw_unstabilized(const CechTarget& target, const CechResult& r) {
  std::ostringstream msg;
  msg << "cech window did not stabilize for " << target.describe() << " at truncations";
  for (const auto& s : r.window) msg << " " << s.truncation;
  throw Error(ErrorKind::unstabilized, msg.str());
}

}  // namespace

HodgeTable hodge_numbers(const CechTarget& target, const CechConfig& config) {
  CechResult r = compute_cech(target, config);
  if (!r.stabilized) throw_unstabilized(target, r);
  return r.window[0].hodge;
}

std::vector<uint64_t> derham_hypercohomology(const CechTarget& target,
                                             const CechConfig& config) {
  CechResult r = compute_cech(target, config);
  if (!r.stabilized) throw_unstabilized(target, r);
  return r.window[0].derham;
}

DegenerationReport degeneration_check(const CechTarget& target, const CechConfig& config) {
  DegenerationReport report;
  report.cech = compute_cech(target, config);
  if (!report.cech.stabilized) return report;
  const CechSnapshot& s = report.cech.window[0];
  report.hodge_sums.assign(s.derham.size(), 0);
  for (size_t q = 0; q < s.hodge.size(); ++q)
    for (size_t k = 0; k < s.hodge[q].size(); ++k)
      if (q + k < report.hodge_sums.size()) report.hodge_sums[q + k] += s.hodge[q][k];
  report.pass = true;
  for (size_t i = 0; i < s.derham.size(); ++i) {
    if (s.derham[i] > report.hodge_sums[i]) report.internal_inconsistency = true;
    if (s.derham[i] != report.hodge_sums[i]) report.pass = false;
  }
  return report;
}

bool cech_grid_identities_ok(const CechTarget& target, uint32_t truncation) {
  Grid grid = build_grid(target, truncation);
  uint32_t n = grid.ncoords;
  std::vector<std::vector<FpMatrix>> cech(n), derham(n);
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t q = 0; q <= grid.qmax; ++q) {
      if (k + 1 < n) cech[k].push_back(cech_map(grid, k, q));
      else cech[k].emplace_back(0, grid.block_dim[k][q], grid.p);
      if (q < grid.qmax) derham[k].push_back(derham_map(grid, k, q));
      else derham[k].emplace_back(0, grid.block_dim[k][q], grid.p);
    }

  auto mul = [&](const FpMatrix& a, const FpMatrix& b) {
    FpMatrix m(a.rows(), b.cols(), grid.p);
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t k2 = 0; k2 < a.cols(); ++k2) {
        uint32_t v = a.at(i, k2);
        if (!v) continue;
        for (size_t j = 0; j < b.cols(); ++j) {
          uint32_t w = b.at(k2, j);
          if (w) m.set(i, j, fp_add(m.at(i, j), fp_mul(v, w, grid.p), grid.p));
        }
      }
    return m;
  };
  auto is_zero = [](const FpMatrix& m) {
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j)
        if (m.at(i, j)) return false;
    return true;
  };

  for (uint32_t q = 0; q <= grid.qmax; ++q)
    for (uint32_t k = 0; k + 2 < n; ++k)
      if (!is_zero(mul(cech[k + 1][q], cech[k][q]))) return false;
  for (uint32_t k = 0; k < n; ++k)
    for (uint32_t q = 0; q + 2 <= grid.qmax; ++q)
      if (!is_zero(mul(derham[k][q + 1], derham[k][q]))) return false;
  // Anticommutation with the total-complex sign: delta d~ + d~ delta = 0,
  // i.e. the unsigned maps commute.
  for (uint32_t k = 0; k + 1 < n; ++k)
    for (uint32_t q = 0; q + 1 <= grid.qmax; ++q) {
      FpMatrix ab = mul(derham[k + 1][q], cech[k][q]);
      FpMatrix ba = mul(cech[k][q + 1], derham[k][q]);
      if (ab.rows() != ba.rows() || ab.cols() != ba.cols()) return false;
      for (size_t i = 0; i < ab.rows(); ++i)
        for (size_t j = 0; j < ab.cols(); ++j)
          if (ab.at(i, j) != ba.at(i, j)) return false;
    }
  return true;
}

}  // namespace chp
