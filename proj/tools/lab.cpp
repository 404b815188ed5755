// Batch front door: parse an experiment plan (or the built-in paper suite),
// run it, and emit reports as an aligned table or jsonlines.

#include <iostream>

#include <CLI11.hpp>

#include "chp/error.hpp"
#include "chp/runner.hpp"
#include "chp/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"chp-lab: exact characteristic-p de Rham experiments"};
  app.set_version_flag("--version", chp::kEngineVersion);

  std::string plan_path;
  std::string format = "table";
  std::string out_path;
  std::string cache_dir;
  std::string suite;
  unsigned jobs = 0;

  CLI::App* run = app.add_subcommand("run", "run an experiment plan");
  run->add_option("plan", plan_path, "plan file (YAML)");
  run->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "jsonlines"}));
  run->add_option("--out", out_path, "output path (default: stdout)");
  run->add_option("--jobs", jobs, "worker pool width");
  run->add_option("--cache", cache_dir, "Groebner cache directory");
  run->add_option("--suite", suite, "built-in suite name")->check(CLI::IsMember({"paper"}));
  run->require_subcommand(0);
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<chp::ExperimentPlan> plans;
    std::string plan_out;
    if (!suite.empty()) {
      plans = chp::paper_suite_plans();
    } else {
      if (plan_path.empty()) {
        std::cerr << "lab: need a plan file or --suite paper\n";
        return 2;
      }
      plans.push_back(chp::parse_plan_file(plan_path));
      plan_out = plans[0].out_path;
    }
    for (auto& p : plans) {
      if (!cache_dir.empty()) p.cache_dir = cache_dir;
      if (jobs != 0) p.jobs = jobs;
    }

    std::vector<chp::ExperimentReport> reports = chp::run_plans(plans);
    chp::EmitFormat fmt =
        format == "jsonlines" ? chp::EmitFormat::jsonlines : chp::EmitFormat::table;
    std::string destination = !out_path.empty() ? out_path : plan_out;
    if (destination.empty()) std::cout << chp::emit_reports(reports, fmt);
    else chp::emit_reports_to_file(reports, fmt, destination);
    return chp::reports_exit_code(reports);
  } catch (const chp::Error& e) {
    std::cerr << "lab: " << chp::to_string(e.kind()) << " error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "lab: " << e.what() << "\n";
    return 2;
  }
}
