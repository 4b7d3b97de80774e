#pragma once

#include "config.hpp"

#include <string>
#include <vector>

namespace diracac::cli {

enum class Relation { AtMost, AtLeast };

// Where a check's value came from; failures name the stage that raised.
enum class Stage { Main, Oracle, Compare };

struct Check {
  std::string name;
  double measured = 0.0;
  double target = 0.0;
  Relation relation = Relation::AtMost;
  Stage stage = Stage::Main;
  bool pass = false;
  std::string diagnostic;

  // pass = measured <= target (or >=), false for non-finite measured.
  static Check at_most(std::string name, double measured, double target, Stage stage = Stage::Main);
  static Check at_least(std::string name, double measured, double target, Stage stage = Stage::Main);
  // A numerical error rendered as a failed check.
  static Check error(std::string name, Stage stage, const std::exception& e);
};

// One delimiter-separated data file. Cells are pre-rendered text.
struct DataTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

// Shortest text that reads back to the same double ("%.17g").
std::string cell(double x);
std::string cell(int x);
std::string cell(std::size_t x);
std::string cell(const std::string& s);

struct RunReport {
  std::string mode = "run";  // "run" or "oracle"
  Json config;
  std::vector<Check> checks;
  std::vector<DataTable> tables;
  double wall_time = 0.0;  // seconds
  std::string version;

  bool passed() const;
  Json to_json() const;  // without wall time, which goes to a separate file
};

std::string error_kind(const std::exception& e);

// Writes <scenario>[.oracle].<table>.csv, <scenario>[.oracle].report.json and
// <scenario>[.oracle].timing.json under dir. Returns the written paths.
std::vector<std::string> write_outputs(const RunReport& report, const std::string& scenario,
                                       const std::string& dir);

}  // namespace diracac::cli
