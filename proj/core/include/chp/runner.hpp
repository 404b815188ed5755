#pragma once

#include "chp/plan.hpp"
#include "chp/report.hpp"

namespace chp {

// Execute every experiment of the plan (worker pool of plan.jobs threads);
// failures are isolated per experiment and reports come back in plan order.
std::vector<ExperimentReport> run_plan(const ExperimentPlan& plan);

// The built-in `--suite paper` matrix: one plan per session prime.
std::vector<ExperimentPlan> paper_suite_plans();

// Convenience: run a sequence of plans and concatenate the reports.
std::vector<ExperimentReport> run_plans(const std::vector<ExperimentPlan>& plans);

}  // namespace chp
