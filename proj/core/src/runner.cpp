#include "chp/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <random>
#include <thread>

#include <json.hpp>

#include "chp/cech.hpp"
#include "chp/twisted.hpp"

namespace chp {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json kdim_json(const KDim& d) {
  if (d.finite) return ordered_json(d.dim);
  return ordered_json("infinite");
}

ordered_json profile_json(const CohomologyProfile& p) {
  ordered_json dims = ordered_json::array();
  ordered_json free_ranks = ordered_json::array();
  for (const auto& d : p.degrees) {
    dims.push_back(kdim_json(d.dim));
    free_ranks.push_back(d.free_rank ? ordered_json(*d.free_rank) : ordered_json(nullptr));
  }
  return ordered_json{{"dims", dims}, {"free_ranks", free_ranks}};
}

std::string dims_summary(const CohomologyProfile& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.degrees.size(); ++i) {
    if (i) s += ",";
    s += p.degrees[i].dim.finite ? std::to_string(p.degrees[i].dim.dim) : "inf";
  }
  return s + ")";
}

Poly random_poly(std::mt19937& rng, const Ring& ring, uint32_t max_deg) {
  // Dense random coefficients on every monomial of total degree <= max_deg;
  // raw draws mod p keep the stream platform-stable.
  Poly f(ring);
  std::function<void(Monomial&, size_t, uint32_t)> rec = [&](Monomial& m, size_t i,
                                                             uint32_t remaining) {
    if (i + 1 == ring.nvars) {
      for (uint32_t e = 0; e <= remaining; ++e) {
        m[i] = e;
        f.add_term(m, static_cast<uint32_t>(rng() % ring.p));
      }
      m[i] = 0;
      return;
    }
    for (uint32_t e = 0; e <= remaining; ++e) {
      m[i] = e;
      rec(m, i + 1, remaining - e);
    }
    m[i] = 0;
  };
  Monomial m(ring.nvars);
  rec(m, 0, max_deg);
  return f;
}

struct ExperimentOutcome {
  Verdict verdict = Verdict::error;
  std::string summary;
  ordered_json details = ordered_json::object();
  std::string error_kind;     // set for in-band errors that keep details
  std::string error_message;
};

ExperimentOutcome run_cartier(const Experiment& e, uint32_t prime, GroebnerCache* cache) {
  AffineVariety x = e.hypersurface.empty()
                        ? AffineVariety::affine_space(e.n, prime)
                        : AffineVariety::hypersurface(
                              e.n, prime, parse_poly(e.hypersurface, Ring(prime, e.n, 'x')),
                              cache);
  CartierReport r = cartier_verify(x, cache);
  ExperimentOutcome out;
  out.verdict = e.exploratory ? Verdict::exploratory : (r.pass ? Verdict::pass : Verdict::fail);
  ordered_json degs = ordered_json::array();
  std::string ranks;
  for (size_t q = 0; q < r.degrees.size(); ++q) {
    const CartierDegree& d = r.degrees[q];
    ordered_json witnesses = ordered_json::array();
    for (const auto& w : d.witnesses) witnesses.push_back(w.to_string());
    degs.push_back(ordered_json{
        {"q", q},
        {"dim", kdim_json(d.dim)},
        {"free_rank", d.free_rank ? ordered_json(*d.free_rank) : ordered_json(nullptr)},
        {"expected_rank", d.expected_rank},
        {"witnesses", witnesses},
        {"witnesses_closed", d.witnesses_closed},
        {"witnesses_generate", d.witnesses_generate},
        {"kernel_matches", d.kernel_matches}});
    if (q) ranks += ",";
    ranks += std::to_string(d.expected_rank);
  }
  out.details["degrees"] = degs;
  out.summary = "Cartier H^q ranks (" + ranks + ") " + (r.pass ? "verified" : "FAILED");
  return out;
}

ExperimentOutcome run_obstruction(const Experiment& e, uint32_t prime, GroebnerCache* cache) {
  AffineVariety x = e.hypersurface.empty()
                        ? AffineVariety::affine_space(e.n, prime)
                        : AffineVariety::hypersurface(
                              e.n, prime, parse_poly(e.hypersurface, Ring(prime, e.n, 'x')),
                              cache);
  ObstructionReport r = build_obstruction_sequence(x, cache);
  ExperimentOutcome out;
  out.verdict = e.exploratory ? Verdict::exploratory : (r.pass ? Verdict::pass : Verdict::fail);
  out.details = ordered_json{{"exact_at_structure", r.exact_at_structure},
                             {"exact_at_pushforward", r.exact_at_pushforward},
                             {"exact_at_cocycles", r.exact_at_cocycles},
                             {"exact_at_forms", r.exact_at_forms},
                             {"cocycle_generators", r.cocycle_generators}};
  out.summary = std::string("obstruction sequence ") + (r.pass ? "exact" : "NOT exact") +
                " at all four spots";
  return out;
}

ExperimentOutcome run_weyl_identities(const Experiment& e, uint32_t prime) {
  Ring xr(prime, e.vars, 'x');
  Ring yr(prime, e.vars, 'y');
  std::mt19937 rng(e.seed);
  uint32_t psi_failures = 0, centrality_failures = 0;

  for (uint32_t t = 0; t < e.count; ++t) {
    // psi-lemma on coordinate fields: psi(d^p) = d^p - (df)^p.
    Poly f = random_poly(rng, xr, e.f_degree);
    for (uint32_t i = 0; i < e.vars; ++i) {
      WeylOp dp = WeylOp::derivation(xr, i).pow(prime);
      WeylOp lhs = twist_automorphism(f, dp);
      WeylOp rhs = dp - WeylOp::from_poly(partial_derivative(f, i).pow(prime));
      if (!(lhs == rhs)) ++psi_failures;
    }
    // centrality of iota(theta') against every generator.
    VectorField theta(yr);
    for (uint32_t i = 0; i < e.vars; ++i) theta.coeffs[i] = random_poly(rng, yr, e.coeff_degree);
    WeylOp iota = center_map(theta, xr);
    for (uint32_t i = 0; i < e.vars; ++i) {
      WeylOp xi = WeylOp::coordinate(xr, i);
      WeylOp di = WeylOp::derivation(xr, i);
      if (!(weyl_mul(iota, xi) - weyl_mul(xi, iota)).is_zero()) ++centrality_failures;
      if (!(weyl_mul(iota, di) - weyl_mul(di, iota)).is_zero()) ++centrality_failures;
    }
  }

  ExperimentOutcome out;
  bool ok = psi_failures == 0 && centrality_failures == 0;
  out.verdict = e.exploratory ? Verdict::exploratory : (ok ? Verdict::pass : Verdict::fail);
  out.details = ordered_json{{"samples", e.count},
                             {"vars", e.vars},
                             {"f_degree", e.f_degree},
                             {"coeff_degree", e.coeff_degree},
                             {"seed", e.seed},
                             {"psi_failures", psi_failures},
                             {"centrality_failures", centrality_failures}};
  out.summary = "psi-lemma and centrality on " + std::to_string(e.count) + " samples: " +
                (ok ? "exact" : "FAILED");
  return out;
}

ExperimentOutcome run_bk(const Experiment& e, uint32_t prime, GroebnerCache* cache) {
  Superpotential f(parse_poly(e.f_text, Ring(prime, e.n, 'x')));
  BkData bk = bk_compare(f, e.degree_cap, cache);

  ordered_json predicted = ordered_json::array();
  for (const auto& pd : bk.predicted) {
    if (!pd.applicable) predicted.push_back(nullptr);
    else if (pd.dim.finite) predicted.push_back(pd.dim.dim);
    else predicted.push_back(ordered_json{{"infinite_truncated", pd.truncated}});
  }

  ExperimentOutcome out;
  out.details = ordered_json{
      {"critical_locus",
       ordered_json{{"empty", bk.locus.empty},
                    {"smooth", bk.locus.smooth},
                    {"dim", bk.locus.dim},
                    {"codim", bk.locus.codim},
                    {"split", bk.locus.split}}},
      {"twisted", profile_json(bk.twisted)},
      {"wedge", profile_json(bk.wedge)},
      {"predicted", predicted},
      {"hypotheses_hold", bk.hypotheses_hold},
      {"finite", bk.finite},
      {"profiles_agree", bk.profiles_agree},
      {"predicted_agrees", bk.predicted_agrees},
      {"euler_agrees", bk.euler_agrees}};

  if (e.exploratory || !bk.hypotheses_hold) {
    // No theorem-level claim without smooth + split; record only.
    out.verdict = Verdict::exploratory;
    out.summary = "twisted " + dims_summary(bk.twisted) + " wedge " + dims_summary(bk.wedge) +
                  " (exploratory)";
    return out;
  }
  bool ok = bk.profiles_agree && bk.predicted_agrees && bk.euler_agrees;
  out.verdict = ok ? Verdict::pass : Verdict::fail;
  out.summary = "twisted " + dims_summary(bk.twisted) + " = wedge " +
                dims_summary(bk.wedge) + (ok ? " = predicted" : " MISMATCH");
  return out;
}

ExperimentOutcome run_l_support(const Experiment& e, uint32_t prime) {
  Superpotential f(parse_poly(e.f_text, Ring(prime, e.n, 'x')));
  LSupportReport r = verify_L_support(f);
  ExperimentOutcome out;
  out.verdict =
      e.exploratory ? Verdict::exploratory : (r.pass ? Verdict::pass : Verdict::fail);
  ordered_json curv = ordered_json::array(), graph = ordered_json::array();
  for (const auto& g : r.p_curvatures) curv.push_back(g.to_string());
  for (const auto& g : r.graph_equations) graph.push_back(g.to_string());
  out.details = ordered_json{{"p_curvatures", curv},
                             {"graph_equations", graph},
                             {"curvature_matches", r.curvature_matches},
                             {"graph_matches", r.graph_matches}};
  out.summary = std::string("p-curvature of L on the graph of df': ") +
                (r.pass ? "exact match" : "MISMATCH");
  return out;
}

ExperimentOutcome run_projective(const Experiment& e, uint32_t prime, GroebnerCache* cache) {
  CechTarget target =
      e.curve_text.empty()
          ? CechTarget::projective_space(e.proj_n, prime)
          : CechTarget::plane_curve(
                PlaneCurve::make(parse_poly(e.curve_text, Ring(prime, 3, 'x')), cache));
  CechConfig config;
  config.truncation = e.truncation;
  config.window = e.window;
  DegenerationReport r = degeneration_check(target, config);

  ordered_json window = ordered_json::array();
  for (const auto& s : r.cech.window)
    window.push_back(ordered_json{{"truncation", s.truncation},
                                  {"hodge", s.hodge},
                                  {"derham", s.derham},
                                  {"grid_dims", s.space_dims}});
  ExperimentOutcome out;
  out.details = ordered_json{{"target", target.describe()},
                             {"window", window},
                             {"stabilized", r.cech.stabilized}};
  if (!r.cech.stabilized) {
    out.verdict = Verdict::error;
    out.error_kind = "unstabilized";
    out.error_message =
        "window did not stabilize for " + target.describe() + "; last window values recorded";
    out.summary = target.describe() + " unstabilized";
    return out;
  }
  out.details["hodge"] = r.cech.window[0].hodge;
  out.details["derham"] = r.cech.window[0].derham;
  out.details["hodge_sums"] = r.hodge_sums;
  out.details["internal_inconsistency"] = r.internal_inconsistency;
  if (r.internal_inconsistency) {
    out.verdict = Verdict::error;
    out.error_kind = "internal_inconsistency";
    out.error_message = "a de Rham dimension exceeds its Hodge sum; engine bug";
    out.summary = target.describe() + " internal inconsistency";
    return out;
  }
  out.verdict =
      e.exploratory ? Verdict::exploratory : (r.pass ? Verdict::pass : Verdict::fail);
  std::string dr;
  for (size_t i = 0; i < r.cech.window[0].derham.size(); ++i)
    dr += (i ? "," : "") + std::to_string(r.cech.window[0].derham[i]);
  out.summary = target.describe() + " H_dR dims (" + dr + ") " +
                (r.pass ? "degenerate" : "DO NOT degenerate");
  return out;
}

ordered_json params_json_of(const Experiment& e, uint32_t prime) {
  ordered_json p;
  p["prime"] = prime;
  switch (e.kind) {
    case ExperimentKind::cartier:
    case ExperimentKind::obstruction:
      p["n"] = e.n;
      if (!e.hypersurface.empty()) p["hypersurface"] = e.hypersurface;
      break;
    case ExperimentKind::weyl_identities:
      p["count"] = e.count;
      p["seed"] = e.seed;
      p["vars"] = e.vars;
      p["coeff_degree"] = e.coeff_degree;
      p["f_degree"] = e.f_degree;
      break;
    case ExperimentKind::bk:
    case ExperimentKind::l_support:
      p["n"] = e.n;
      p["f"] = e.f_text;
      if (e.kind == ExperimentKind::bk) p["degree_cap"] = e.degree_cap;
      break;
    case ExperimentKind::projective_degeneration:
      if (e.curve_text.empty()) p["space"] = e.proj_n;
      else p["G"] = e.curve_text;
      p["truncation"] = e.truncation;
      p["window"] = e.window;
      break;
  }
  return p;
}

}  // namespace

std::vector<ExperimentReport> run_plan(const ExperimentPlan& plan) {
  std::string cache_dir = plan.cache_dir;
  if (cache_dir.empty()) {
    if (const char* env = std::getenv("LAB_CACHE_DIR")) cache_dir = env;
  }
  // One shared cache per plan; the engine's immutability makes it safe to
  // share across the worker pool.
  std::unique_ptr<GroebnerCache> cache = cache_dir.empty()
                                             ? std::make_unique<GroebnerCache>()
                                             : std::make_unique<GroebnerCache>(cache_dir);

  std::vector<ExperimentReport> reports(plan.experiments.size());
  std::atomic<size_t> next{0};

  auto worker = [&]() {
    while (true) {
      size_t idx = next.fetch_add(1);
      if (idx >= plan.experiments.size()) break;
      const Experiment& e = plan.experiments[idx];
      ExperimentReport& r = reports[idx];
      char idbuf[16];
      snprintf(idbuf, sizeof idbuf, "exp-%03zu", idx);
      r.id = idbuf;
      r.kind = to_string(e.kind);
      r.exploratory_mode = e.exploratory;
      r.params_json = params_json_of(e, plan.prime).dump();
      uint64_t h0 = cache->hits(), m0 = cache->misses();
      auto t0 = std::chrono::steady_clock::now();
      try {
        ExperimentOutcome out;
        switch (e.kind) {
          case ExperimentKind::cartier: out = run_cartier(e, plan.prime, cache.get()); break;
          case ExperimentKind::obstruction:
            out = run_obstruction(e, plan.prime, cache.get());
            break;
          case ExperimentKind::weyl_identities: out = run_weyl_identities(e, plan.prime); break;
          case ExperimentKind::bk: out = run_bk(e, plan.prime, cache.get()); break;
          case ExperimentKind::l_support: out = run_l_support(e, plan.prime); break;
          case ExperimentKind::projective_degeneration:
            out = run_projective(e, plan.prime, cache.get());
            break;
        }
        r.verdict = out.verdict;
        r.summary = out.summary;
        r.details_json = out.details.dump();
        r.error_kind = out.error_kind;
        r.error_message = out.error_message;
      } catch (const Error& ex) {
        r.verdict = Verdict::error;
        r.error_kind = to_string(ex.kind());
        r.error_message = ex.what();
      } catch (const std::exception& ex) {
        r.verdict = Verdict::error;
        r.error_kind = "internal";
        r.error_message = ex.what();
      }
      auto t1 = std::chrono::steady_clock::now();
      r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      r.cache_hits = cache->hits() - h0;
      r.cache_misses = cache->misses() - m0;
    }
  };

  uint32_t jobs = std::max<uint32_t>(1, plan.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (uint32_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return reports;
}

std::vector<ExperimentReport> run_plans(const std::vector<ExperimentPlan>& plans) {
  std::vector<ExperimentReport> all;
  size_t counter = 0;
  for (const auto& plan : plans) {
    std::vector<ExperimentReport> reports = run_plan(plan);
    for (auto& r : reports) {
      char idbuf[16];
      snprintf(idbuf, sizeof idbuf, "exp-%03zu", counter++);
      r.id = idbuf;
      all.push_back(std::move(r));
    }
  }
  return all;
}

namespace {

Experiment make_cartier(uint32_t n) {
  Experiment e;
  e.kind = ExperimentKind::cartier;
  e.n = n;
  return e;
}

Experiment make_obstruction(uint32_t n) {
  Experiment e;
  e.kind = ExperimentKind::obstruction;
  e.n = n;
  return e;
}

Experiment make_weyl(uint32_t seed) {
  Experiment e;
  e.kind = ExperimentKind::weyl_identities;
  e.count = 20;
  e.seed = seed;
  e.vars = 2;
  return e;
}

Experiment make_bk(const std::string& f, uint32_t n) {
  Experiment e;
  e.kind = ExperimentKind::bk;
  e.f_text = f;
  e.n = n;
  return e;
}

Experiment make_l_support(const std::string& f, uint32_t n) {
  Experiment e;
  e.kind = ExperimentKind::l_support;
  e.f_text = f;
  e.n = n;
  return e;
}

Experiment make_projective_space(uint32_t n) {
  Experiment e;
  e.kind = ExperimentKind::projective_degeneration;
  e.proj_n = n;
  return e;
}

Experiment make_curve(const std::string& g) {
  Experiment e;
  e.kind = ExperimentKind::projective_degeneration;
  e.curve_text = g;
  return e;
}

}  // namespace

std::vector<ExperimentPlan> paper_suite_plans() {
  std::vector<ExperimentPlan> plans;

  {
    ExperimentPlan p2;
    p2.prime = 2;
    p2.experiments = {make_cartier(1),          make_cartier(2),
                      make_obstruction(1),      make_obstruction(2),
                      make_weyl(11),            make_l_support("0", 1),
                      make_l_support("x0^2", 1), make_l_support("x0*x1", 2),
                      make_projective_space(1)};
    plans.push_back(std::move(p2));
  }
  {
    ExperimentPlan p3;
    p3.prime = 3;
    p3.experiments = {make_cartier(1),
                      make_cartier(2),
                      make_obstruction(1),
                      make_obstruction(2),
                      make_weyl(13),
                      make_bk("x0^2", 1),
                      make_bk("x0^2 + x1^2", 2),
                      make_bk("x0^2", 2),
                      make_l_support("0", 1),
                      make_l_support("x0^2", 1),
                      make_l_support("x0*x1", 2),
                      make_projective_space(1),
                      make_projective_space(2)};
    plans.push_back(std::move(p3));
  }
  {
    ExperimentPlan p5;
    p5.prime = 5;
    p5.experiments = {make_cartier(1), make_cartier(2), make_weyl(17), make_bk("x0^2", 1),
                      make_bk("x0^2 + x1^2", 2), make_projective_space(1),
                      make_curve("x0^3 + x1^3 + x2^3 - x0*x1*x2")};
    plans.push_back(std::move(p5));
  }
  {
    ExperimentPlan p7;
    p7.prime = 7;
    p7.experiments = {make_projective_space(1), make_curve("x0^4 + x1^4 + x2^4")};
    plans.push_back(std::move(p7));
  }
  return plans;
}

}  // namespace chp
