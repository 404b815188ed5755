#pragma once

#include "chp/fp_matrix.hpp"
#include "chp/groebner.hpp"

namespace chp {

// Smooth plane curve V(G) in P^2.  The certificate asks (G, dG/dx_i) to cut
// out at most the irrelevant ideal: a finite-dimensional quotient.
class PlaneCurve {
public:
  static PlaneCurve make(const Poly& g, GroebnerCache* cache = nullptr);

  const Poly& equation() const { return g_; }
  uint32_t degree() const { return degree_; }
  uint32_t p() const { return g_.ring().p; }

private:
  explicit PlaneCurve(Poly g, uint32_t degree) : g_(std::move(g)), degree_(degree) {}
  Poly g_;
  uint32_t degree_;
};

// P^1, P^2, or a smooth plane curve, with the standard coordinate cover.
struct CechTarget {
  uint32_t ncoords = 2;               // 2 for P^1, 3 for P^2 and curves
  uint32_t p = 3;
  std::optional<PlaneCurve> curve;

  static CechTarget projective_space(uint32_t n, uint32_t p);
  static CechTarget plane_curve(const PlaneCurve& c);

  uint32_t dim() const { return curve ? 1 : ncoords - 1; }
  std::string describe() const;
};

struct CechConfig {
  uint32_t truncation = 0;  // 0 = defaulted from the target
  uint32_t window = 3;      // consecutive truncations that must agree
};

using HodgeTable = std::vector<std::vector<uint64_t>>;  // [q][p'] with p' a Cech degree

struct CechSnapshot {
  uint32_t truncation = 0;
  HodgeTable hodge;
  std::vector<uint64_t> derham;
  std::vector<std::vector<uint64_t>> space_dims;  // [k][q] grid block dims
};

struct CechResult {
  bool stabilized = false;
  std::vector<CechSnapshot> window;  // one snapshot per truncation tried
  const CechSnapshot& last() const { return window.back(); }
};

// Hodge numbers and de Rham hypercohomology over the stabilization window.
CechResult compute_cech(const CechTarget& target, const CechConfig& config = {});

// Spec-facing operations; these throw unstabilized when the window fails.
HodgeTable hodge_numbers(const CechTarget& target, const CechConfig& config = {});
std::vector<uint64_t> derham_hypercohomology(const CechTarget& target,
                                             const CechConfig& config = {});

struct DegenerationReport {
  CechResult cech;
  std::vector<uint64_t> hodge_sums;  // per total degree
  bool pass = false;
  bool internal_inconsistency = false;  // some dR dim exceeds its Hodge sum
};

// Hodge-to-de Rham degeneration by dimension comparison.
DegenerationReport degeneration_check(const CechTarget& target, const CechConfig& config = {});

// Exact matrix identities on the grid at one truncation: the Cech and de
// Rham differentials square to zero and anticommute (with the total-complex
// sign).  Exposed for the property suite.
bool cech_grid_identities_ok(const CechTarget& target, uint32_t truncation);

}  // namespace chp
