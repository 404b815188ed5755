#include "chp/plan.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "chp/polynomial.hpp"

namespace chp {

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::cartier: return "cartier";
    case ExperimentKind::obstruction: return "obstruction";
    case ExperimentKind::weyl_identities: return "weyl_identities";
    case ExperimentKind::bk: return "bk";
    case ExperimentKind::l_support: return "L_support";
    case ExperimentKind::projective_degeneration: return "projective_degeneration";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from(const std::string& name) {
  if (name == "cartier") return ExperimentKind::cartier;
  if (name == "obstruction") return ExperimentKind::obstruction;
  if (name == "weyl_identities") return ExperimentKind::weyl_identities;
  if (name == "bk") return ExperimentKind::bk;
  if (name == "L_support") return ExperimentKind::l_support;
  if (name == "projective_degeneration") return ExperimentKind::projective_degeneration;
  throw Error(ErrorKind::parse, "unknown experiment kind: " + name);
}

namespace {

[[noreturn]] void semantic_error(const std::string& msg) {
  throw Error(ErrorKind::parse, msg);
}

uint32_t get_u32(const YAML::Node& node, const std::string& key, uint32_t fallback,
                 uint32_t lo, uint32_t hi) {
  if (!node[key]) return fallback;
  int64_t v;
  try {
    v = node[key].as<int64_t>();
  } catch (const YAML::Exception&) {
    semantic_error("key '" + key + "' must be an integer");
  }
  if (v < static_cast<int64_t>(lo) || v > static_cast<int64_t>(hi))
    semantic_error("key '" + key + "' out of range [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]");
  return static_cast<uint32_t>(v);
}

std::string get_str(const YAML::Node& node, const std::string& key, std::string fallback) {
  if (!node[key]) return fallback;
  try {
    return node[key].as<std::string>();
  } catch (const YAML::Exception&) {
    semantic_error("key '" + key + "' must be a string");
  }
}

void validate_poly(const std::string& text, uint32_t p, uint32_t nvars, char prefix,
                   const std::string& what) {
  try {
    parse_poly(text, Ring(p, nvars, prefix));
  } catch (const Error& e) {
    semantic_error("invalid polynomial for " + what + ": " + e.what());
  }
}

Experiment parse_experiment(const YAML::Node& node, uint32_t prime) {
  if (!node.IsMap()) semantic_error("experiment entries must be mappings");
  if (!node["kind"]) semantic_error("experiment missing 'kind'");
  Experiment e;
  e.kind = experiment_kind_from(node["kind"].as<std::string>());

  std::string mode = get_str(node, "mode", "assert");
  if (mode == "exploratory") e.exploratory = true;
  else if (mode != "assert") semantic_error("mode must be 'assert' or 'exploratory'");

  switch (e.kind) {
    case ExperimentKind::cartier:
    case ExperimentKind::obstruction:
      e.n = get_u32(node, "n", 1, 1, 3);
      e.hypersurface = get_str(node, "hypersurface", "");
      if (!e.hypersurface.empty())
        validate_poly(e.hypersurface, prime, e.n, 'x', "'hypersurface'");
      break;
    case ExperimentKind::weyl_identities:
      e.count = get_u32(node, "count", 20, 1, 10000);
      e.seed = get_u32(node, "seed", 1, 0, 1u << 30);
      e.vars = get_u32(node, "vars", 2, 1, 3);
      e.coeff_degree = get_u32(node, "coeff_degree", 2, 0, 6);
      e.f_degree = get_u32(node, "f_degree", 3, 0, 6);
      break;
    case ExperimentKind::bk:
    case ExperimentKind::l_support:
      e.n = get_u32(node, "n", 1, 1, 3);
      e.f_text = get_str(node, "f", "0");
      validate_poly(e.f_text, prime, e.n, 'x', "'f'");
      e.degree_cap = get_u32(node, "degree_cap", 1u << 20, 1, 1u << 30);
      break;
    case ExperimentKind::projective_degeneration: {
      YAML::Node proj = node["projective"];
      if (!proj || !proj.IsMap())
        semantic_error("projective_degeneration needs a 'projective' mapping");
      if (proj["prime"]) {
        uint32_t p = get_u32(proj, "prime", prime, 2, 97);
        if (p != prime)
          semantic_error("projective prime disagrees with the plan prime (one prime per plan)");
      }
      e.curve_text = get_str(proj, "G", "");
      e.proj_n = get_u32(proj, "space", e.curve_text.empty() ? 1 : 2, 1, 2);
      if (!e.curve_text.empty()) validate_poly(e.curve_text, prime, 3, 'x', "'G'");
      e.truncation = get_u32(proj, "truncation", 0, 0, 64);
      e.window = get_u32(proj, "window", 3, 2, 5);
      break;
    }
  }
  return e;
}

}  // namespace

ExperimentPlan parse_plan(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& ex) {
    throw Error(ErrorKind::parse, "plan syntax error at line " +
                                      std::to_string(ex.mark.line + 1) + ", column " +
                                      std::to_string(ex.mark.column + 1) + ": " +
                                      ex.msg);
  }
  if (!root.IsMap()) semantic_error("plan must be a mapping");

  ExperimentPlan plan;
  if (!root["prime"]) semantic_error("plan missing 'prime'");
  int64_t p;
  try {
    p = root["prime"].as<int64_t>();
  } catch (const YAML::Exception&) {
    semantic_error("'prime' must be an integer");
  }
  if (p < 2 || p > 97 || !is_prime(static_cast<uint32_t>(p)))
    semantic_error("modulus must be prime (2 <= p <= 97), got " + std::to_string(p));
  plan.prime = static_cast<uint32_t>(p);

  plan.out_path = get_str(root, "out", "");
  plan.cache_dir = get_str(root, "cache", "");
  plan.jobs = get_u32(root, "jobs", 1, 1, 64);

  YAML::Node exps = root["experiments"];
  if (exps && !exps.IsSequence()) semantic_error("'experiments' must be a sequence");
  if (exps)
    for (const auto& e : exps) plan.experiments.push_back(parse_experiment(e, plan.prime));
  return plan;
}

ExperimentPlan parse_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot read plan file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_plan(buf.str());
}

}  // namespace chp
