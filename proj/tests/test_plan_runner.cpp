#include <doctest.h>

#include "chp/error.hpp"
#include "chp/runner.hpp"

using namespace chp;

TEST_CASE("plan parsing") {
  ExperimentPlan p = parse_plan("{prime: 3, experiments: [{kind: cartier, n: 1}]}");
  CHECK(p.prime == 3);
  REQUIRE(p.experiments.size() == 1);
  CHECK(p.experiments[0].kind == ExperimentKind::cartier);
  CHECK(p.experiments[0].n == 1);
  CHECK(!p.experiments[0].exploratory);
}

TEST_CASE("composite modulus is rejected with a named reason") {
  try {
    parse_plan("prime: 4");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("modulus must be prime") != std::string::npos);
  }
}

TEST_CASE("bk experiment parses with mode and f") {
  ExperimentPlan p =
      parse_plan("{prime: 3, experiments: [{kind: bk, f: \"x0^2\", n: 1, mode: assert}]}");
  REQUIRE(p.experiments.size() == 1);
  CHECK(p.experiments[0].kind == ExperimentKind::bk);
  CHECK(p.experiments[0].f_text == "x0^2");
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_plan("prime: 3\nexperiments:\n  - {kind: cartier");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("invalid polynomials and unknown kinds fail at parse time") {
  CHECK_THROWS_AS(parse_plan("{prime: 3, experiments: [{kind: bk, f: \"x5\", n: 1}]}"), Error);
  CHECK_THROWS_AS(parse_plan("{prime: 3, experiments: [{kind: nonsense}]}"), Error);
  CHECK_THROWS_AS(
      parse_plan("{prime: 3, experiments: [{kind: bk, f: \"x0\", n: 1, mode: maybe}]}"),
      Error);
  // projective prime must match the plan prime
  CHECK_THROWS_AS(
      parse_plan("{prime: 3, experiments: [{kind: projective_degeneration, "
                 "projective: {space: 1, prime: 5}}]}"),
      Error);
}

TEST_CASE("run_plan executes and reports in plan order") {
  ExperimentPlan p = parse_plan(
      "{prime: 3, experiments: ["
      "{kind: cartier, n: 1}, "
      "{kind: bk, f: \"x0^2\", n: 1}, "
      "{kind: L_support, f: \"x0^2\", n: 1}]}");
  auto reports = run_plan(p);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].id == "exp-000");
  CHECK(reports[0].kind == "cartier");
  CHECK(reports[0].verdict == Verdict::pass);
  CHECK(reports[1].verdict == Verdict::pass);
  CHECK(reports[2].verdict == Verdict::pass);
  CHECK(reports_exit_code(reports) == 0);
}

TEST_CASE("empty experiment list gives an empty report list") {
  ExperimentPlan p = parse_plan("{prime: 3, experiments: []}");
  CHECK(run_plan(p).empty());
  ExperimentPlan p2 = parse_plan("prime: 5");
  CHECK(run_plan(p2).empty());
}

TEST_CASE("failures are isolated per experiment") {
  // the middle experiment rejects its nonsmooth hypersurface at run time
  ExperimentPlan p = parse_plan(
      "{prime: 3, experiments: ["
      "{kind: cartier, n: 1}, "
      "{kind: cartier, n: 2, hypersurface: \"x0^2\"}, "
      "{kind: L_support, f: \"0\", n: 1}]}");
  auto reports = run_plan(p);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].verdict == Verdict::pass);
  CHECK(reports[1].verdict == Verdict::error);
  CHECK(reports[1].error_kind == "non_smooth");
  CHECK(reports[2].verdict == Verdict::pass);
  CHECK(reports_exit_code(reports) == 1);
}

TEST_CASE("exploratory verdicts do not flip the exit code") {
  ExperimentPlan p = parse_plan(
      "{prime: 5, experiments: [{kind: bk, f: \"x0^3\", n: 1, mode: exploratory}]}");
  auto reports = run_plan(p);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].verdict == Verdict::exploratory);
  CHECK(reports_exit_code(reports) == 0);
}

TEST_CASE("hypotheses-failed bk runs in assert mode come back exploratory") {
  ExperimentPlan p =
      parse_plan("{prime: 5, experiments: [{kind: bk, f: \"x0^3\", n: 1}]}");
  auto reports = run_plan(p);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].verdict == Verdict::exploratory);
}

TEST_CASE("emission formats") {
  ExperimentPlan p = parse_plan("{prime: 3, experiments: [{kind: L_support, f: \"0\", n: 1}]}");
  auto reports = run_plan(p);
  std::string table = emit_reports(reports, EmitFormat::table);
  CHECK(table.find("VERDICT") != std::string::npos);
  CHECK(table.find("pass") != std::string::npos);

  std::string lines = emit_reports(reports, EmitFormat::jsonlines);
  CHECK(lines.find("\"verdict\":\"pass\"") != std::string::npos);
  CHECK(lines.find("\"engine_version\"") != std::string::npos);

  // byte-stable modulo runtime: run twice, strip the runtime object
  auto reports2 = run_plan(p);
  CHECK(strip_runtime_fields(lines) ==
        strip_runtime_fields(emit_reports(reports2, EmitFormat::jsonlines)));
}

TEST_CASE("error records carry kind and window values for unstabilized runs") {
  ExperimentPlan p = parse_plan(
      "{prime: 5, experiments: [{kind: projective_degeneration, "
      "projective: {G: \"x0^3 + x1^3 + x2^3 - x0*x1*x2\", truncation: 1, window: 3}}]}");
  auto reports = run_plan(p);
  REQUIRE(reports.size() == 1);
  if (reports[0].verdict == Verdict::error) {
    CHECK(reports[0].error_kind == "unstabilized");
    CHECK(reports[0].details_json.find("window") != std::string::npos);
  }
}

TEST_CASE("emission io failures carry path context") {
  try {
    emit_reports_to_file({}, EmitFormat::table, "/nonexistent_dir_zzz/out.txt");
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
    CHECK(std::string(e.what()).find("/nonexistent_dir_zzz/out.txt") != std::string::npos);
  }
}

TEST_CASE("paper suite plans cover the acceptance matrix shape") {
  auto plans = paper_suite_plans();
  REQUIRE(plans.size() == 4);
  CHECK(plans[0].prime == 2);
  CHECK(plans[1].prime == 3);
  CHECK(plans[2].prime == 5);
  CHECK(plans[3].prime == 7);
}
