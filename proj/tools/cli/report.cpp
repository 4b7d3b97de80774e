#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace diracac::cli {

namespace {

const char* relation_text(Relation r) { return r == Relation::AtMost ? "<=" : ">="; }

const char* stage_text(Stage s) {
  switch (s) {
    case Stage::Main: return "main";
    case Stage::Oracle: return "oracle";
    case Stage::Compare: return "compare";
  }
  return "main";
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

Check Check::at_most(std::string name, double measured, double target, Stage stage) {
  Check c{std::move(name), measured, target, Relation::AtMost, stage, false, {}};
  c.pass = std::isfinite(measured) && measured <= target;
  return c;
}

Check Check::at_least(std::string name, double measured, double target, Stage stage) {
  Check c{std::move(name), measured, target, Relation::AtLeast, stage, false, {}};
  c.pass = std::isfinite(measured) && measured >= target;
  return c;
}

Check Check::error(std::string name, Stage stage, const std::exception& e) {
  Check c{std::move(name), std::nan(""), std::nan(""), Relation::AtMost, stage, false, {}};
  c.diagnostic = std::string(stage_text(stage)) + " path failed: " + error_kind(e) + ": " + e.what();
  return c;
}

void DataTable::add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

std::string cell(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
std::string cell(int x) { return std::to_string(x); }
std::string cell(std::size_t x) { return std::to_string(x); }
std::string cell(const std::string& s) { return s; }

bool RunReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json RunReport::to_json() const {
  Json checks_json = Json::array();
  for (const auto& c : checks) {
    Json e{{"name", c.name},
           {"measured", number(c.measured)},
           {"target", number(c.target)},
           {"relation", relation_text(c.relation)},
           {"stage", stage_text(c.stage)},
           {"pass", c.pass}};
    if (!c.diagnostic.empty()) e["diagnostic"] = c.diagnostic;
    checks_json.push_back(e);
  }
  Json tables_json = Json::array();
  for (const auto& t : tables) tables_json.push_back({{"name", t.name}, {"rows", t.rows.size()}});
  return {{"tool", "diracac"}, {"version", version}, {"mode", mode}, {"config", config},
          {"checks", checks_json}, {"tables", tables_json}, {"passed", passed()}};
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const IntegrationBlowup*>(&e)) return "IntegrationBlowup";
  if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
  if (dynamic_cast<const NearDegenerate*>(&e)) return "NearDegenerate";
  if (dynamic_cast<const LogSingularity*>(&e)) return "LogSingularity";
  if (dynamic_cast<const SingularParameter*>(&e)) return "SingularParameter";
  if (dynamic_cast<const QuadratureError*>(&e)) return "QuadratureError";
  if (dynamic_cast<const SmallnessViolated*>(&e)) return "SmallnessViolated";
  if (dynamic_cast<const OutOfRegime*>(&e)) return "OutOfRegime";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "exception";
}

std::vector<std::string> write_outputs(const RunReport& report, const std::string& scenario,
                                       const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string stem = scenario + (report.mode == "oracle" ? ".oracle" : "");
  std::vector<std::string> written;

  for (const auto& t : report.tables) {
    std::string text;
    for (std::size_t i = 0; i < t.header.size(); ++i) text += (i ? "," : "") + t.header[i];
    text += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + row[i];
      text += '\n';
    }
    const fs::path path = fs::path(dir) / (stem + "." + t.name + ".csv");
    write_text(path, text);
    written.push_back(path.string());
  }
  const fs::path report_path = fs::path(dir) / (stem + ".report.json");
  write_text(report_path, report.to_json().dump(2) + "\n");
  written.push_back(report_path.string());

  const fs::path timing_path = fs::path(dir) / (stem + ".timing.json");
  write_text(timing_path, Json{{"wall_time_seconds", report.wall_time}}.dump(2) + "\n");
  written.push_back(timing_path.string());
  return written;
}

}  // namespace diracac::cli
