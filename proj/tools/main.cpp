#include "cli/config.hpp"
#include "cli/report.hpp"
#include "cli/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>

namespace {

using namespace diracac::cli;

constexpr int kExitFailedChecks = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string out;
  int threads = 1;
  double tol_scale = 1.0;
};

int execute(const std::string& path, const Flags& flags, bool oracle) {
  ScenarioConfig cfg;
  try {
    cfg = load_config(path);
    cfg.threads = flags.threads;
    cfg.tol_scale = flags.tol_scale;
    if (!flags.out.empty()) {
      cfg.output_dir = flags.out;
    } else if (const char* env = std::getenv("DIRACAC_OUT"); env && *env) {
      cfg.output_dir = env;
    }
    validate_scenario(cfg, oracle);
  } catch (const ConfigError& e) {
    std::cerr << "diracac: invalid config: " << e.what() << '\n';
    return kExitUsage;
  }

  RunReport rep;
  try {
    rep = oracle ? compare_oracle(cfg) : run_scenario(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "diracac: invalid config: " << e.what() << '\n';
    return kExitUsage;
  }
  for (const auto& c : rep.checks) {
    std::printf("%s %-40s measured %-12.6g target %s%.6g\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.measured, c.relation == Relation::AtMost ? "<= " : ">= ", c.target);
    if (!c.diagnostic.empty()) std::printf("     %s\n", c.diagnostic.c_str());
  }
  try {
    for (const auto& p : write_outputs(rep, cfg.scenario, cfg.output_dir))
      std::printf("wrote %s\n", p.c_str());
  } catch (const std::exception& e) {
    std::cerr << "diracac: " << e.what() << '\n';
    return kExitFailedChecks;
  }
  std::printf("%s: %s in %.2f s\n", cfg.scenario.c_str(), rep.passed() ? "passed" : "FAILED",
              rep.wall_time);
  return rep.passed() ? 0 : kExitFailedChecks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diracac: spectral experiments for Dirac operators"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--out", flags.out, "output directory (overrides the config)");
  app.add_option("--threads", flags.threads, "worker threads for independent sweeps")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-scale", flags.tol_scale, "multiplies every tolerance")
      ->check(CLI::PositiveNumber);

  std::string config;
  auto* run = app.add_subcommand("run", "run a scenario");
  run->add_option("config", config, "scenario config (JSON)")->required();
  run->fallthrough();
  auto* oracle = app.add_subcommand("oracle", "compare a scenario against its oracle");
  oracle->add_option("config", config, "scenario config (JSON)")->required();
  oracle->fallthrough();
  auto* list = app.add_subcommand("list-scenarios", "print the scenario registry");
  auto* version = app.add_subcommand("version", "print the tool version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*list) {
    for (const auto& s : scenario_registry())
      std::printf("%-22s %s%s\n", s.name.c_str(), s.summary.c_str(), s.has_oracle ? " [oracle]" : "");
    return 0;
  }
  if (*version) {
    std::printf("diracac %s\n", tool_version().c_str());
    return 0;
  }
  return execute(config, flags, static_cast<bool>(*oracle));
}
