#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chp {

enum class Verdict { pass, fail, exploratory, error };
const char* to_string(Verdict v);

// Self-contained record of one experiment: parameters, dimension tables and
// witnesses (as canonical JSON), wall-clock timing, and cache statistics.
// Everything outside `runtime` is deterministic given the engine version.
struct ExperimentReport {
  std::string id;
  std::string kind;
  bool exploratory_mode = false;
  std::string params_json = "{}";
  Verdict verdict = Verdict::error;
  std::string error_kind;     // set when verdict == error
  std::string error_message;  // set when verdict == error
  std::string details_json = "{}";
  std::string summary;        // one line for the table format
  double wall_ms = 0.0;
  uint64_t cache_hits = 0;
  uint64_t cache_misses = 0;
};

enum class EmitFormat { table, jsonlines };

std::string to_jsonline(const ExperimentReport& r);
std::string emit_reports(const std::vector<ExperimentReport>& reports, EmitFormat format);
void emit_reports_to_file(const std::vector<ExperimentReport>& reports, EmitFormat format,
                          const std::string& path);

// Nonzero iff some assert-mode experiment failed or errored.
int reports_exit_code(const std::vector<ExperimentReport>& reports);

// Strips the volatile `runtime` object; what replay determinism compares.
std::string strip_runtime_fields(const std::string& jsonlines);

}  // namespace chp
