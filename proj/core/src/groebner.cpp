#include "chp/groebner.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "chp/version.hpp"

namespace chp {

namespace {

// Move the leading term of `work` into `rem` (both in place).
void strip_lead_term(ModuleVector& work, ModuleVector& rem) {
  ModuleTerm t = work.lead_term();
  uint32_t c = work[t.pos].coeff(t.mono);
  rem[t.pos].add_term(t.mono, c);
  work[t.pos].add_term(t.mono, fp_neg(c, work.ring().p));
}

// Index of a reducer whose leading term divides t, or -1.
int64_t find_reducer(const std::vector<ModuleVector>& gens, const ModuleTerm& t) {
  for (size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].is_zero()) continue;
    ModuleTerm lt = gens[k].lead_term();
    if (lt.pos == t.pos && lt.mono.divides(t.mono)) return static_cast<int64_t>(k);
  }
  return -1;
}

bool single_component(const ModuleVector& v) {
  size_t nonzero = 0;
  for (size_t i = 0; i < v.rank(); ++i)
    if (!v[i].is_zero()) ++nonzero;
  return nonzero == 1;
}

struct Pair {
  uint64_t lcm_deg;
  size_t i, j;
  bool operator<(const Pair& o) const {
    if (lcm_deg != o.lcm_deg) return lcm_deg < o.lcm_deg;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

}  // namespace

ModuleVector normal_form(ModuleVector v, const std::vector<ModuleVector>& gens) {
  ModuleVector rem(v.ring(), v.rank());
  const uint32_t p = v.ring().p;
  while (!v.is_zero()) {
    ModuleTerm t = v.lead_term();
    int64_t k = find_reducer(gens, t);
    if (k < 0) {
      strip_lead_term(v, rem);
      continue;
    }
    const ModuleVector& g = gens[static_cast<size_t>(k)];
    ModuleTerm lt = g.lead_term();
    uint32_t q = fp_mul(v[t.pos].coeff(t.mono), fp_inv(g.lead_coeff(), p), p);
    v = v - g.times_monomial(lt.mono.quotient_into(t.mono), q);
  }
  return rem;
}

GroebnerBasis module_groebner(const Ring& ring, size_t rank,
                              std::vector<ModuleVector> gens, GroebnerCache* cache) {
  for (const auto& g : gens) {
    if (g.rank() != rank) throw Error(ErrorKind::structural, "generator rank mismatch");
    if (g.ring() != ring) throw Error(ErrorKind::structural, "generator ring mismatch");
  }
  gens.erase(std::remove_if(gens.begin(), gens.end(),
                            [](const ModuleVector& v) { return v.is_zero(); }),
             gens.end());

  uint64_t key = 0;
  if (cache) {
    key = GroebnerCache::key_of(ring, rank, gens);
    if (auto hit = cache->lookup(key)) return *hit;
  }

  const uint32_t p = ring.p;
  std::vector<ModuleVector> basis;
  for (auto& g : gens) basis.push_back(g.scaled(fp_inv(g.lead_coeff(), p)));

  std::set<Pair> queue;
  auto push_pairs = [&](size_t j) {
    ModuleTerm lj = basis[j].lead_term();
    for (size_t i = 0; i < j; ++i) {
      ModuleTerm li = basis[i].lead_term();
      if (li.pos != lj.pos) continue;
      // Product criterion; only sound for generators living entirely in
      // their leading position (the module analogue fails in general).
      if (Monomial::coprime(li.mono, lj.mono) && single_component(basis[i]) &&
          single_component(basis[j]))
        continue;
      queue.insert({Monomial::lcm(li.mono, lj.mono).degree(), i, j});
    }
  };
  for (size_t j = 0; j < basis.size(); ++j) push_pairs(j);

  while (!queue.empty()) {
    Pair pr = *queue.begin();
    queue.erase(queue.begin());
    const ModuleVector &f = basis[pr.i], &g = basis[pr.j];
    ModuleTerm lf = f.lead_term(), lg = g.lead_term();
    Monomial gamma = Monomial::lcm(lf.mono, lg.mono);
    ModuleVector s = f.times_monomial(lf.mono.quotient_into(gamma), 1) -
                     g.times_monomial(lg.mono.quotient_into(gamma), 1);
    ModuleVector r = normal_form(std::move(s), basis);
    if (r.is_zero()) continue;
    basis.push_back(r.scaled(fp_inv(r.lead_coeff(), p)));
    push_pairs(basis.size() - 1);
  }

  // Minimalize: drop elements whose leading term is divisible by another's.
  std::vector<ModuleVector> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    ModuleTerm ti = basis[i].lead_term();
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      ModuleTerm tj = basis[j].lead_term();
      if (tj.pos != ti.pos || !tj.mono.divides(ti.mono)) continue;
      if (tj.mono == ti.mono) redundant = j < i;  // keep the earlier twin
      else redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  // Tail-reduce to the unique reduced basis.
  std::vector<ModuleVector> reduced(minimal);
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<ModuleVector> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced[i] = normal_form(minimal[i], others);
    reduced[i] = reduced[i].scaled(fp_inv(reduced[i].lead_coeff(), p));
  }
  std::sort(reduced.begin(), reduced.end(), lead_term_greater);

  GroebnerBasis out(ring, rank, std::move(reduced));
  if (cache) cache->store(key, out);
  return out;
}

bool in_submodule(const ModuleVector& v, const GroebnerBasis& gb) {
  return normal_form(v, gb.generators()).is_zero();
}

bool submodule_equal(const GroebnerBasis& a, const GroebnerBasis& b) {
  for (const auto& g : a.generators())
    if (!in_submodule(g, b)) return false;
  for (const auto& g : b.generators())
    if (!in_submodule(g, a)) return false;
  return true;
}

namespace {

// Graph generators (M e_j, e_j) plus (w, 0) for the optional targets, over
// R^{rows+cols}; POT makes the first block dominate, so basis elements with
// vanishing first block cut out exactly the preimage submodule.
std::vector<ModuleVector> elimination_block(const PolyMatrix& m,
                                            const std::vector<ModuleVector>& targets,
                                            GroebnerCache* cache) {
  const Ring& ring = m.ring();
  size_t rows = m.rows(), cols = m.cols();
  std::vector<ModuleVector> gens;
  for (size_t j = 0; j < cols; ++j) {
    ModuleVector v(ring, rows + cols);
    for (size_t i = 0; i < rows; ++i) v[i] = m.at(i, j);
    v[rows + j] = Poly::constant(ring, 1);
    gens.push_back(std::move(v));
  }
  for (const auto& w : targets) {
    if (w.rank() != rows) throw Error(ErrorKind::structural, "target rank mismatch");
    ModuleVector v(ring, rows + cols);
    for (size_t i = 0; i < rows; ++i) v[i] = w[i];
    gens.push_back(std::move(v));
  }
  GroebnerBasis gb = module_groebner(ring, rows + cols, std::move(gens), cache);

  std::vector<ModuleVector> out;
  for (const auto& g : gb.generators()) {
    bool first_block_zero = true;
    for (size_t i = 0; i < rows && first_block_zero; ++i)
      if (!g[i].is_zero()) first_block_zero = false;
    if (!first_block_zero) continue;
    ModuleVector v(ring, cols);
    for (size_t j = 0; j < cols; ++j) v[j] = g[rows + j];
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<ModuleVector> kernel_of_map(const PolyMatrix& m, GroebnerCache* cache) {
  return elimination_block(m, {}, cache);
}

std::vector<ModuleVector> preimage_of_submodule(const PolyMatrix& m,
                                                const std::vector<ModuleVector>& targets,
                                                GroebnerCache* cache) {
  return elimination_block(m, targets, cache);
}

MembershipSolver::MembershipSolver(std::vector<ModuleVector> cols, GroebnerCache* cache) {
  if (cols.empty()) throw Error(ErrorKind::structural, "membership solver needs columns");
  const Ring& ring = cols[0].ring();
  rows_ = cols[0].rank();
  n_ = cols.size();
  std::vector<ModuleVector> gens;
  for (size_t j = 0; j < n_; ++j) {
    if (cols[j].rank() != rows_) throw Error(ErrorKind::structural, "column rank mismatch");
    ModuleVector v(ring, rows_ + n_);
    for (size_t i = 0; i < rows_; ++i) v[i] = cols[j][i];
    v[rows_ + j] = Poly::constant(ring, 1);
    gens.push_back(std::move(v));
  }
  gb_ = module_groebner(ring, rows_ + n_, std::move(gens), cache);
}

std::optional<std::vector<Poly>> MembershipSolver::solve(const ModuleVector& target) const {
  if (target.rank() != rows_) throw Error(ErrorKind::structural, "target rank mismatch");
  const Ring& ring = target.ring();
  ModuleVector aug(ring, rows_ + n_);
  for (size_t i = 0; i < rows_; ++i) aug[i] = target[i];
  ModuleVector nf = normal_form(std::move(aug), gb_.generators());
  for (size_t i = 0; i < rows_; ++i)
    if (!nf[i].is_zero()) return std::nullopt;
  std::vector<Poly> coeffs;
  coeffs.reserve(n_);
  for (size_t j = 0; j < n_; ++j) coeffs.push_back(-nf[rows_ + j]);
  return coeffs;
}

std::optional<std::vector<Poly>> solve_membership(const std::vector<ModuleVector>& cols,
                                                  const ModuleVector& target,
                                                  GroebnerCache* cache) {
  if (cols.empty()) {
    if (target.is_zero()) return std::vector<Poly>{};
    return std::nullopt;
  }
  return MembershipSolver(cols, cache).solve(target);
}

KDim quotient_k_dimension(size_t rank, const GroebnerBasis& gb, uint64_t degree_cap) {
  KDim out;
  out.cap = degree_cap;
  if (rank == 0) {
    out.finite = true;
    return out;
  }
  const Ring& ring = gb.ring();
  size_t nvars = ring.nvars;

  std::vector<std::vector<Monomial>> lts(rank);
  for (const auto& g : gb.generators()) {
    ModuleTerm t = g.lead_term();
    lts[t.pos].push_back(t.mono);
  }

  uint64_t total = 0;
  for (size_t pos = 0; pos < rank; ++pos) {
    bool dead = false;
    for (const auto& m : lts[pos])
      if (m.is_one()) dead = true;
    if (dead) continue;

    // Finite at this position iff a pure power of every variable leads.
    std::vector<uint64_t> bound(nvars, 0);
    for (size_t v = 0; v < nvars; ++v) {
      uint64_t best = 0;
      bool found = false;
      for (const auto& m : lts[pos]) {
        bool pure = m[v] > 0;
        for (size_t w = 0; w < nvars && pure; ++w)
          if (w != v && m[w] != 0) pure = false;
        if (pure && (!found || m[v] < best)) {
          best = m[v];
          found = true;
        }
      }
      if (!found) return out;  // provably infinite-dimensional
      bound[v] = best;
    }

    uint64_t box = 1;
    for (uint64_t b : bound) {
      box *= b;
      if (box > degree_cap)
        throw Error(ErrorKind::structural,
                    "degree cap exceeded enumerating a finite quotient");
    }
    // Count monomials below the bounds not divisible by any leading term.
    Monomial probe(nvars);
    uint64_t count = 0;
    std::vector<uint32_t> idx(nvars, 0);
    while (true) {
      for (size_t v = 0; v < nvars; ++v) probe[v] = idx[v];
      bool divisible = false;
      for (const auto& m : lts[pos])
        if (m.divides(probe)) {
          divisible = true;
          break;
        }
      if (!divisible) ++count;
      size_t v = 0;
      while (v < nvars) {
        if (++idx[v] < bound[v]) break;
        idx[v] = 0;
        ++v;
      }
      if (v == nvars) break;
    }
    total += count;
  }
  out.finite = true;
  out.dim = total;
  return out;
}

std::vector<uint64_t> truncated_dim_table(size_t rank, const GroebnerBasis& gb,
                                          uint64_t dmax) {
  const Ring& ring = gb.ring();
  size_t nvars = ring.nvars;
  std::vector<std::vector<Monomial>> lts(rank);
  for (const auto& g : gb.generators()) {
    ModuleTerm t = g.lead_term();
    lts[t.pos].push_back(t.mono);
  }
  std::vector<uint64_t> per_degree(dmax + 1, 0);
  Monomial probe(nvars);
  std::vector<uint32_t> idx(nvars, 0);
  // Walk the box [0, dmax]^nvars once, filtering by total degree.
  while (true) {
    uint64_t deg = 0;
    for (size_t v = 0; v < nvars; ++v) deg += idx[v];
    if (deg <= dmax) {
      for (size_t v = 0; v < nvars; ++v) probe[v] = idx[v];
      for (size_t pos = 0; pos < rank; ++pos) {
        bool divisible = false;
        for (const auto& m : lts[pos])
          if (m.divides(probe)) {
            divisible = true;
            break;
          }
        if (!divisible) ++per_degree[deg];
      }
    }
    size_t v = 0;
    while (v < nvars) {
      if (++idx[v] <= dmax) break;
      idx[v] = 0;
      ++v;
    }
    if (v == nvars) break;
  }
  std::vector<uint64_t> cumulative(dmax + 1, 0);
  uint64_t acc = 0;
  for (uint64_t d = 0; d <= dmax; ++d) {
    acc += per_degree[d];
    cumulative[d] = acc;
  }
  return cumulative;
}

// ---------------------------------------------------------------------------
// Cache

namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

void fnv(uint64_t& h, const void* data, size_t n) {
  const auto* b = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= b[i];
    h *= kFnvPrime;
  }
}

void fnv_u64(uint64_t& h, uint64_t v) { fnv(h, &v, sizeof v); }

constexpr uint64_t kCacheMagic = 0x43485047424c4f42ull;  // "CHPGBLOB"

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
bool get(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return static_cast<bool>(in);
}

}  // namespace

uint64_t GroebnerCache::key_of(const Ring& ring, size_t rank,
                               const std::vector<ModuleVector>& gens) {
  std::vector<ModuleVector> sorted(gens);
  std::sort(sorted.begin(), sorted.end(),
            [](const ModuleVector& a, const ModuleVector& b) {
              return a.to_string() < b.to_string();
            });
  uint64_t h = kFnvOffset;
  fnv(h, kEngineVersion, std::char_traits<char>::length(kEngineVersion));
  fnv_u64(h, ring.p);
  fnv_u64(h, ring.nvars);
  fnv_u64(h, static_cast<uint64_t>(ring.prefix));
  fnv_u64(h, rank);
  for (const auto& g : sorted) {
    std::string s = g.to_string();
    fnv(h, s.data(), s.size());
  }
  return h;
}

GroebnerCache::GroebnerCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(*dir_, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create cache directory " + dir_->string());
}

std::filesystem::path GroebnerCache::file_for(uint64_t key) const {
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(key));
  return *dir_ / (std::string(buf) + ".gb");
}

std::optional<GroebnerBasis> GroebnerCache::lookup(uint64_t key) {
  std::scoped_lock lock(mu_);
  if (auto it = mem_.find(key); it != mem_.end()) {
    ++hits_;
    return it->second;
  }
  if (!dir_) {
    ++misses_;
    return std::nullopt;
  }
  std::ifstream in(file_for(key), std::ios::binary);
  if (!in) {
    ++misses_;
    return std::nullopt;
  }
  uint64_t magic = 0;
  uint32_t ver = 0, p = 0, nvars = 0, prefix = 0;
  uint64_t rank = 0, ngens = 0;
  if (!get(in, magic) || magic != kCacheMagic || !get(in, ver) ||
      ver != kCacheFormatVersion || !get(in, p) || !get(in, nvars) || !get(in, prefix) ||
      !get(in, rank) || !get(in, ngens) || ngens > (1u << 20)) {
    ++misses_;
    return std::nullopt;
  }
  try {
    Ring ring(p, nvars, static_cast<char>(prefix));
    std::vector<ModuleVector> gens;
    for (uint64_t g = 0; g < ngens; ++g) {
      ModuleVector v(ring, rank);
      for (uint64_t c = 0; c < rank; ++c) {
        uint64_t nterms = 0;
        if (!get(in, nterms) || nterms > (1u << 24)) return std::nullopt;
        for (uint64_t t = 0; t < nterms; ++t) {
          Monomial m(nvars);
          for (uint32_t vi = 0; vi < nvars; ++vi) {
            uint32_t e = 0;
            if (!get(in, e)) return std::nullopt;
            m[vi] = e;
          }
          uint32_t coeff = 0;
          if (!get(in, coeff) || coeff >= p) return std::nullopt;
          v[c].add_term(m, coeff);
        }
      }
      gens.push_back(std::move(v));
    }
    ++hits_;
    GroebnerBasis gb(ring, rank, std::move(gens));
    mem_.emplace(key, gb);
    return gb;
  } catch (const Error&) {
    ++misses_;
    return std::nullopt;
  }
}

void GroebnerCache::store(uint64_t key, const GroebnerBasis& gb) {
  std::scoped_lock lock(mu_);
  mem_.insert_or_assign(key, gb);
  if (!dir_) return;
  auto path = file_for(key);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // cache is best-effort
    put(out, kCacheMagic);
    put(out, kCacheFormatVersion);
    put(out, gb.ring().p);
    put(out, gb.ring().nvars);
    put(out, static_cast<uint32_t>(gb.ring().prefix));
    put(out, static_cast<uint64_t>(gb.rank()));
    put(out, static_cast<uint64_t>(gb.generators().size()));
    for (const auto& g : gb.generators())
      for (size_t c = 0; c < g.rank(); ++c) {
        put(out, static_cast<uint64_t>(g[c].term_count()));
        for (const auto& [m, coeff] : g[c].terms()) {
          for (size_t vi = 0; vi < m.nvars(); ++vi) put(out, m[vi]);
          put(out, coeff);
        }
      }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace chp
