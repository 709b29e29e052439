#include "specband/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace specband {

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json VerificationReport::to_json() const {
  Json j;
  j["schema_version"] = schema_version;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["config"] = config_echo;
  j["passed"] = passed();
  Json jchecks = Json::array();
  for (const auto& c : checks) {
    Json jc;
    jc["name"] = c.name;
    jc["value"] = c.value;
    jc["threshold"] = c.threshold;
    jc["relation"] = c.relation;
    jc["pass"] = c.pass;
    jchecks.push_back(jc);
  }
  j["checks"] = jchecks;
  Json jtables = Json::array();
  for (const auto& t : tables) {
    Json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    Json rows = Json::array();
    for (const auto& r : t.rows) rows.push_back(r);
    jt["rows"] = rows;
    jtables.push_back(jt);
  }
  j["tables"] = jtables;
  j["warnings"] = warnings;
  return j;
}

VerificationReport VerificationReport::from_json(const Json& j) {
  VerificationReport r;
  r.schema_version = j.at("schema_version").get<int>();
  r.experiment = j.at("experiment").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config_echo = j.at("config");
  for (const auto& jc : j.at("checks")) {
    Check c;
    c.name = jc.at("name").get<std::string>();
    c.value = jc.at("value").get<double>();
    c.threshold = jc.at("threshold").get<double>();
    c.relation = jc.at("relation").get<std::string>();
    c.pass = jc.at("pass").get<bool>();
    r.checks.push_back(c);
  }
  for (const auto& jt : j.at("tables")) {
    Table t;
    t.name = jt.at("name").get<std::string>();
    for (const auto& c : jt.at("columns"))
      t.columns.push_back(c.get<std::string>());
    for (const auto& row : jt.at("rows"))
      t.rows.push_back(std::vector<Json>(row.begin(), row.end()));
    r.tables.push_back(std::move(t));
  }
  for (const auto& w : j.at("warnings"))
    r.warnings.push_back(w.get<std::string>());
  return r;
}

namespace {

std::string cell_to_csv(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string VerificationReport::to_csv() const {
  std::string out;
  const bool multi = tables.size() > 1;
  // Header comes from the first table; with several tables a `table` column
  // prefixes every row and the union header is per-table rows appended in
  // order (documented in the README per experiment).
  if (tables.empty()) return out;
  if (!multi) {
    const Table& t = tables.front();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      out += t.columns[c];
      out += (c + 1 < t.columns.size()) ? ',' : '\n';
    }
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out += cell_to_csv(row[c]);
        out += (c + 1 < row.size()) ? ',' : '\n';
      }
    }
    return out;
  }
  out = "table,column,row_index,value\n";
  for (const auto& t : tables) {
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      for (std::size_t c = 0; c < t.columns.size() && c < t.rows[r].size();
           ++c) {
        out += t.name;
        out += ',';
        out += t.columns[c];
        out += ',';
        out += std::to_string(r);
        out += ',';
        out += cell_to_csv(t.rows[r][c]);
        out += '\n';
      }
    }
  }
  return out;
}

std::string config_hash(const Json& config) {
  const std::string dump = config.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

EmitPaths emit_report(const VerificationReport& report,
                      const std::string& format, const std::string& out_dir) {
  if (format != "json" && format != "csv" && format != "both")
    throw std::invalid_argument("emit_report: format must be json|csv|both");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw std::runtime_error("emit_report: cannot create output directory " +
                             out_dir + ": " + ec.message());

  const std::string stem =
      report.experiment + "_" + config_hash(report.config_echo);
  EmitPaths paths;
  if (format == "json" || format == "both") {
    const fs::path p = fs::path(out_dir) / (stem + ".json");
    std::ofstream f(p);
    if (!f) throw std::runtime_error("emit_report: cannot write " + p.string());
    f << report.to_json().dump(2) << '\n';
    paths.json_path = p.string();
  }
  if (format == "csv" || format == "both") {
    const fs::path p = fs::path(out_dir) / (stem + ".csv");
    std::ofstream f(p);
    if (!f) throw std::runtime_error("emit_report: cannot write " + p.string());
    f << report.to_csv();
    paths.csv_path = p.string();
  }
  return paths;
}

}  // namespace specband
