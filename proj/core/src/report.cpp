#include "chp/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "chp/error.hpp"
#include "chp/version.hpp"

namespace chp {

using ordered_json = nlohmann::ordered_json;

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::exploratory: return "exploratory";
    case Verdict::error: return "error";
  }
  return "unknown";
}

std::string to_jsonline(const ExperimentReport& r) {
  ordered_json j;
  j["id"] = r.id;
  j["kind"] = r.kind;
  j["mode"] = r.exploratory_mode ? "exploratory" : "assert";
  j["params"] = ordered_json::parse(r.params_json);
  j["verdict"] = to_string(r.verdict);
  if (r.verdict == Verdict::error) {
    j["error"] = ordered_json{{"kind", r.error_kind}, {"message", r.error_message}};
  }
  j["details"] = ordered_json::parse(r.details_json);
  j["summary"] = r.summary;
  j["engine_version"] = kEngineVersion;
  std::ostringstream ms;
  ms << std::fixed << std::setprecision(3) << r.wall_ms;
  j["runtime"] = ordered_json{{"wall_ms", ms.str()},
                              {"cache_hits", r.cache_hits},
                              {"cache_misses", r.cache_misses}};
  return j.dump();
}

namespace {

std::string table_header() {
  std::ostringstream out;
  out << std::left << std::setw(8) << "ID" << std::setw(26) << "KIND" << std::setw(13)
      << "MODE" << std::setw(13) << "VERDICT" << std::setw(12) << "TIME(ms)"
      << "SUMMARY";
  return out.str();
}

std::string table_row(const ExperimentReport& r) {
  std::ostringstream out;
  out << std::left << std::setw(8) << r.id << std::setw(26) << r.kind << std::setw(13)
      << (r.exploratory_mode ? "exploratory" : "assert") << std::setw(13)
      << to_string(r.verdict) << std::setw(12) << std::fixed << std::setprecision(1)
      << r.wall_ms
      << (r.verdict == Verdict::error ? r.error_kind + ": " + r.error_message : r.summary);
  return out.str();
}

}  // namespace

std::string emit_reports(const std::vector<ExperimentReport>& reports, EmitFormat format) {
  std::ostringstream out;
  if (format == EmitFormat::jsonlines) {
    for (const auto& r : reports) out << to_jsonline(r) << "\n";
  } else {
    out << table_header() << "\n";
    for (const auto& r : reports) out << table_row(r) << "\n";
    size_t pass = 0, fail = 0, expl = 0, err = 0;
    for (const auto& r : reports) {
      switch (r.verdict) {
        case Verdict::pass: ++pass; break;
        case Verdict::fail: ++fail; break;
        case Verdict::exploratory: ++expl; break;
        case Verdict::error: ++err; break;
      }
    }
    out << pass << " pass, " << fail << " fail, " << expl << " exploratory, " << err
        << " error\n";
  }
  return out.str();
}

void emit_reports_to_file(const std::vector<ExperimentReport>& reports, EmitFormat format,
                          const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open output file: " + path);
  out << emit_reports(reports, format);
  if (!out) throw Error(ErrorKind::io, "failed writing output file: " + path);
}

int reports_exit_code(const std::vector<ExperimentReport>& reports) {
  for (const auto& r : reports)
    if (!r.exploratory_mode && (r.verdict == Verdict::fail || r.verdict == Verdict::error))
      return 1;
  return 0;
}

std::string strip_runtime_fields(const std::string& jsonlines) {
  std::istringstream in(jsonlines);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line);
    j.erase("runtime");
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace chp
