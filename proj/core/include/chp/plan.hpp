#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chp {

enum class ExperimentKind {
  cartier,
  obstruction,
  weyl_identities,
  bk,
  l_support,
  projective_degeneration,
};
const char* to_string(ExperimentKind k);
ExperimentKind experiment_kind_from(const std::string& name);

struct Experiment {
  ExperimentKind kind = ExperimentKind::cartier;
  bool exploratory = false;  // mode: assert | exploratory

  // cartier / obstruction
  uint32_t n = 1;
  std::string hypersurface;  // optional equation, empty = affine space

  // weyl_identities
  uint32_t count = 20;
  uint32_t seed = 1;
  uint32_t vars = 2;
  uint32_t coeff_degree = 2;
  uint32_t f_degree = 3;

  // bk / L_support
  std::string f_text = "0";
  uint64_t degree_cap = 1u << 20;

  // projective_degeneration
  std::string curve_text;    // homogeneous G; empty = projective space
  uint32_t proj_n = 1;       // P^1 or P^2 when curve_text is empty
  uint32_t truncation = 0;   // 0 = defaulted
  uint32_t window = 3;
};

struct ExperimentPlan {
  uint32_t prime = 3;
  std::vector<Experiment> experiments;
  std::string out_path;   // empty = stdout
  std::string cache_dir;  // empty = environment default or none
  uint32_t jobs = 1;
};

// Parse and validate the declarative plan grammar (YAML; keys documented in
// the README).  Parse errors carry line/column positions; semantic errors
// name the offending key.
ExperimentPlan parse_plan(const std::string& text);
ExperimentPlan parse_plan_file(const std::string& path);

}  // namespace chp
