#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>

#include "chp/module.hpp"

namespace chp {

// Auto-reduced, monic Groebner basis of a submodule of R^rank under the
// POT/grevlex order.  The reduced basis is unique for the submodule, which
// makes it safe to cache by content.
class GroebnerBasis {
public:
  GroebnerBasis() = default;
  GroebnerBasis(const Ring& ring, size_t rank, std::vector<ModuleVector> gens)
      : ring_(ring), rank_(rank), gens_(std::move(gens)) {}

  const Ring& ring() const { return ring_; }
  size_t rank() const { return rank_; }
  const std::vector<ModuleVector>& generators() const { return gens_; }
  bool empty() const { return gens_.empty(); }

  bool operator==(const GroebnerBasis& o) const {
    return ring_ == o.ring_ && rank_ == o.rank_ && gens_ == o.gens_;
  }

private:
  Ring ring_;
  size_t rank_ = 0;
  std::vector<ModuleVector> gens_;
};

class GroebnerCache;

// Full normal form against a set of vectors (typically a GB); every term of
// the result is irreducible.
ModuleVector normal_form(ModuleVector v, const std::vector<ModuleVector>& gens);

// Buchberger for submodules of free modules.  Normal selection strategy
// (lowest lcm degree first), product criterion restricted to generators
// concentrated in their leading position, chain criterion in general.
GroebnerBasis module_groebner(const Ring& ring, size_t rank,
                              std::vector<ModuleVector> gens,
                              GroebnerCache* cache = nullptr);

bool in_submodule(const ModuleVector& v, const GroebnerBasis& gb);
bool submodule_equal(const GroebnerBasis& a, const GroebnerBasis& b);

// Generators of { v in R^cols : M v = 0 } via POT elimination on the graph
// module generated by (M e_j, e_j).
std::vector<ModuleVector> kernel_of_map(const PolyMatrix& m, GroebnerCache* cache = nullptr);

// Generators of { v in R^cols : M v in <targets> }.
std::vector<ModuleVector> preimage_of_submodule(const PolyMatrix& m,
                                                const std::vector<ModuleVector>& targets,
                                                GroebnerCache* cache = nullptr);

// Solve sum_j x_j * cols_j = target; returns the coefficient vector if the
// target lies in the generated submodule.
std::optional<std::vector<Poly>> solve_membership(const std::vector<ModuleVector>& cols,
                                                  const ModuleVector& target,
                                                  GroebnerCache* cache = nullptr);

// Same computation with the augmented basis held for repeated targets.
class MembershipSolver {
public:
  MembershipSolver(std::vector<ModuleVector> cols, GroebnerCache* cache = nullptr);
  std::optional<std::vector<Poly>> solve(const ModuleVector& target) const;

private:
  size_t rows_ = 0, n_ = 0;
  GroebnerBasis gb_;
};

// k-dimension verdict of a quotient module.
struct KDim {
  bool finite = false;
  uint64_t dim = 0;       // valid when finite
  uint64_t cap = 0;       // enumeration cap in force when not finite
  bool operator==(const KDim& o) const {
    return finite == o.finite && (!finite || dim == o.dim);
  }
};

// Dimension over k of R^rank / <gb>.  Finiteness is decided by leading-term
// analysis (pure powers of every variable at every live position); the cap
// only guards the standard-monomial enumeration.
KDim quotient_k_dimension(size_t rank, const GroebnerBasis& gb, uint64_t degree_cap = 1u << 20);

// Cumulative standard-monomial counts in total degree <= D, for D=0..dmax;
// the Hilbert-truncated table reported for infinite-dimensional quotients.
std::vector<uint64_t> truncated_dim_table(size_t rank, const GroebnerBasis& gb, uint64_t dmax);

// Content-addressed cache for reduced bases: an in-memory map plus an
// optional on-disk store of versioned binary blobs.
class GroebnerCache {
public:
  GroebnerCache() = default;
  explicit GroebnerCache(std::filesystem::path dir);

  std::optional<GroebnerBasis> lookup(uint64_t key);
  void store(uint64_t key, const GroebnerBasis& gb);

  static uint64_t key_of(const Ring& ring, size_t rank, const std::vector<ModuleVector>& gens);

  uint64_t hits() const { return hits_; }
  uint64_t misses() const { return misses_; }

private:
  std::filesystem::path file_for(uint64_t key) const;
  std::optional<std::filesystem::path> dir_;
  std::map<uint64_t, GroebnerBasis> mem_;
  std::mutex mu_;
  uint64_t hits_ = 0, misses_ = 0;
};

}  // namespace chp
