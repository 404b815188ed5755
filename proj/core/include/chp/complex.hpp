#pragma once

#include "chp/groebner.hpp"

namespace chp {

// Bounded complex of free modules with PolyMatrix differentials.  A degree
// may carry a presentation submodule ("relations"); the term then stands
// for the quotient module and d*d = 0 is required modulo relations.  Free
// complexes have empty relation lists and d*d = 0 on the nose.
class ChainComplex {
public:
  ChainComplex() = default;

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  size_t length() const { return ranks_.size(); }
  const std::vector<size_t>& ranks() const { return ranks_; }
  size_t rank_at(int degree) const { return ranks_.at(index_of(degree)); }
  // Differential out of `degree` (shape ranks[i+1] x ranks[i]).
  const PolyMatrix& diff(int degree) const { return diffs_.at(index_of(degree)); }
  const std::vector<ModuleVector>& relations_at(int degree) const {
    return relations_.at(index_of(degree));
  }
  bool has_relations() const;

  size_t index_of(int degree) const;

  bool operator==(const ChainComplex& o) const;

  friend ChainComplex make_complex(const Ring&, int, std::vector<size_t>,
                                   std::vector<PolyMatrix>,
                                   std::vector<std::vector<ModuleVector>>,
                                   GroebnerCache*);

private:
  Ring ring_;
  int lo_ = 0;
  std::vector<size_t> ranks_;
  std::vector<PolyMatrix> diffs_;                    // size = length-1
  std::vector<std::vector<ModuleVector>> relations_;  // size = length
};

// Construct and validate; throws non_complex when some d*d fails to vanish
// (modulo relations where present).
ChainComplex make_complex(const Ring& ring, int lo, std::vector<size_t> ranks,
                          std::vector<PolyMatrix> diffs,
                          std::vector<std::vector<ModuleVector>> relations = {},
                          GroebnerCache* cache = nullptr);

// Exterior-algebra complex on elements (s_1..s_m): degree-q term of rank
// C(m,q), differential wedge with sum s_i e_i.
ChainComplex koszul_complex(const std::vector<Poly>& elements);

struct DegreeCohomology {
  KDim dim;
  std::optional<uint64_t> free_rank;      // set when H splits off free with no relations
  std::vector<ModuleVector> generators;   // lifted generator witnesses
};

struct CohomologyProfile {
  int lo = 0;
  std::vector<DegreeCohomology> degrees;

  const DegreeCohomology& at(int degree) const {
    return degrees.at(static_cast<size_t>(degree - lo));
  }
  std::vector<KDim> dims() const;
  // Sum (-1)^i dim H^i; nullopt when some degree is infinite.
  std::optional<int64_t> euler_characteristic() const;
};

CohomologyProfile cohomology_profile(const ChainComplex& c, uint64_t degree_cap = 1u << 20,
                                     GroebnerCache* cache = nullptr);

enum class ProfileComparison { equal, first_dominates, mixed };
const char* to_string(ProfileComparison v);

ProfileComparison compare_profiles(const CohomologyProfile& a, const CohomologyProfile& b);

// Text serialization (ranks plus differential entries in polynomial
// syntax), for reports and round-trip checks.
std::string complex_to_text(const ChainComplex& c);
ChainComplex complex_from_text(const std::string& text);

// Subsets of {0..n-1} of size q in lexicographic order; the basis order of
// every exterior-power block in the system.
std::vector<std::vector<size_t>> subsets_of_size(size_t n, size_t q);
// Sign of inserting index i into the sorted subset I (before wedging).
int insertion_sign(const std::vector<size_t>& I, size_t i);

}  // namespace chp
