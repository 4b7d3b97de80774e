#pragma once

#include "config.hpp"
#include "report.hpp"

#include <string>
#include <vector>

namespace diracac::cli {

struct ScenarioInfo {
  std::string name;
  std::string summary;
  bool has_oracle = false;
};

// Registry in listing order.
std::vector<ScenarioInfo> scenario_registry();

// Unknown scenario names and invalid potential specs raise ConfigError.
void validate_scenario(const ScenarioConfig& cfg, bool oracle_mode = false);

// Dispatches to the module operations of the scenario. Numerical errors are
// rendered as failed checks; nothing is written to disk.
RunReport run_scenario(const ScenarioConfig& cfg);

// Runs the main path and the registered oracle independently and reports
// their discrepancies. Raises ConfigError when no oracle is registered.
RunReport compare_oracle(const ScenarioConfig& cfg);

std::string tool_version();

}  // namespace diracac::cli
