#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace specband {

using Json = nlohmann::ordered_json;

// One pass/fail assertion inside a report.
struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", ">=", "==0"
  bool pass = false;
};

// Named rectangular table; cells are JSON scalars so CSV and JSON emitters
// share one source of truth.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add_row(std::vector<Json> row) { rows.push_back(std::move(row)); }
};

// Persistent experiment outcome. Serialization is deterministic: key order
// is fixed, doubles print with round-trip precision, and no wall-clock data
// is embedded (run timestamps go to the console log only).
struct VerificationReport {
  std::string experiment;
  int schema_version = 1;
  Json config_echo;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
  std::vector<Table> tables;
  std::vector<Check> checks;

  bool passed() const;
  Json to_json() const;
  static VerificationReport from_json(const Json& j);

  // Single CSV per report: a leading `table` column when there is more than
  // one table, otherwise exactly the table's own columns.
  std::string to_csv() const;
};

// FNV-1a over the canonical config dump; used in report filenames.
std::string config_hash(const Json& config);

struct EmitPaths {
  std::string json_path;
  std::string csv_path;
};

// Writes <experiment>_<hash>.json / .csv under out_dir (created if needed).
// format is "json", "csv", or "both".
EmitPaths emit_report(const VerificationReport& report,
                      const std::string& format, const std::string& out_dir);

// Round-trip double formatting shared by the CSV emitters.
std::string format_double(double v);

}  // namespace specband
