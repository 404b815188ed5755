#pragma once

#include "chp/frobenius.hpp"
#include "chp/weyl.hpp"

namespace chp {

// A regular function f on affine n-space together with its derived data.
struct Superpotential {
  Poly f;                     // in the x-ring
  std::vector<Poly> partials; // d_i f
  Poly f_twisted;             // f' in the y-ring

  explicit Superpotential(const Poly& f_in);
  uint32_t n() const { return f.ring().nvars; }
  uint32_t p() const { return f.ring().p; }
};

// F_* Omega_{X, d - wedge df} over k[y]; same ranks as the de Rham
// pushforward, byte-identical to it at f = 0.
ChainComplex build_twisted_pushforward(const Superpotential& f, GroebnerCache* cache = nullptr);

// Omega_{X', wedge df'}: the Koszul complex on the partials of f'.
ChainComplex build_wedge_complex(const Superpotential& f);

struct CriticalLocusAnalysis {
  std::vector<Poly> jacobian_ideal;  // nonzero partials
  bool empty = false;                // J is the unit ideal
  bool smooth = false;               // scheme-theoretically smooth
  int64_t dim = -1;
  uint64_t codim = 0;
  bool split = false;                // tangent sequence splits to first order
  std::vector<ModuleVector> tangent_generators;  // T_Z inside O_Z^n
};

// Jacobian-criterion smoothness of Z = Crit f, its codimension, and the
// first-order splitting of 0 -> T_Z -> T_X|_Z -> N -> 0 decided by solving
// for a retraction over O_Z.
CriticalLocusAnalysis critical_locus(const Superpotential& f, GroebnerCache* cache = nullptr);

// Predicted cohomology at one degree: Gamma(Z, Omega^{i-c}_Z (x) Lambda^c N).
struct PredictedDegree {
  bool applicable = false;  // degree lies in [c, c + dim Z]
  KDim dim;
  std::vector<uint64_t> truncated;  // Hilbert table when infinite
};

struct BkData {
  CriticalLocusAnalysis locus;
  CohomologyProfile twisted;
  CohomologyProfile wedge;
  std::vector<PredictedDegree> predicted;  // indexed by degree 0..n
  bool hypotheses_hold = false;            // smooth + split
  bool finite = false;                     // twisted profile all finite
  bool profiles_agree = false;             // twisted vs wedge, degreewise
  bool predicted_agrees = false;           // where predicted is applicable+finite
  bool euler_agrees = false;               // when both profiles are finite
};

// Dimension-level Barannikov-Kontsevich comparison: twisted pushforward vs
// wedge complex vs the dualizing-complex prediction over the critical locus.
BkData bk_compare(const Superpotential& f, uint64_t degree_cap = 1u << 20,
                  GroebnerCache* cache = nullptr);

struct LSupportReport {
  std::vector<Poly> p_curvatures;     // per coordinate field, 1x1 entries
  std::vector<Poly> graph_equations;  // df'/dy_i in the y-ring
  bool curvature_matches = false;     // p-curvature = -(d_i f)^p exactly
  bool graph_matches = false;         // folded curvature matches df'/dy_i
  bool pass = false;
};

// p-curvature support of L = psi_* O: the center acts through the graph of
// df', witnessed by exact polynomial identities.
LSupportReport verify_L_support(const Superpotential& f);

}  // namespace chp
