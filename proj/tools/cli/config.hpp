#pragma once

#include "diracac/partialwave.hpp"
#include "diracac/potential.hpp"
#include "diracac/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace diracac::cli {

using Json = nlohmann::json;

// Malformed or inconsistent configuration. Raised before any output exists.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct LambdaRange {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  // count equally spaced values from min to max (min alone when count = 1).
  std::vector<double> values() const;
};

// Built-in potential name plus its parameters, or a sampled potential file.
struct PotentialSpec {
  std::string builtin;  // empty when file is set
  std::string file;     // resolved against the config directory
  Json params = Json::object();
};

struct ScenarioConfig {
  std::string scenario;
  std::vector<PotentialSpec> potentials;  // empty: scenario default
  double grid_step = 0.05;
  double r_max = 60.0;
  std::vector<LambdaRange> lambdas;       // empty: scenario default
  std::vector<int> truncations;           // empty: scenario default
  std::map<std::string, double> tolerances;
  std::string output_dir = "out";
  Json params = Json::object();           // scenario-specific settings
  double tol_scale = 1.0;
  int threads = 1;

  // Override if present, otherwise the default; times tol_scale.
  double tolerance(const std::string& key, double fallback) const;
  std::vector<double> lambda_values(const std::vector<LambdaRange>& fallback) const;
  std::vector<int> truncation_list(const std::vector<int>& fallback) const;

  // Normalized echo for reports (threads and output_dir are omitted so runs
  // differing only in those produce identical reports).
  Json echo() const;
};

// Parses and validates. Relative file paths resolve against base_dir.
ScenarioConfig parse_config(const Json& j, const std::filesystem::path& base_dir = {});
ScenarioConfig load_config(const std::string& path);

//------------------------------------------------------------------------------
// Typed access to scenario parameters with ConfigError on a type mismatch.
double param_double(const Json& j, const std::string& key, double fallback);
int param_int(const Json& j, const std::string& key, int fallback);
bool param_bool(const Json& j, const std::string& key, bool fallback);
std::vector<double> param_doubles(const Json& j, const std::string& key,
                                  const std::vector<double>& fallback);
// Complex numbers as [re, im] pairs or plain reals.
std::vector<Complex> param_complexes(const Json& j, const std::string& key,
                                     const std::vector<Complex>& fallback);

struct NamedPotential {
  std::string label;
  MatrixPotential potential;
};

// One-dimensional canonical-system potentials. Random families expand to
// `count` members.
std::vector<NamedPotential> build_matrix_potentials(const PotentialSpec& spec);
std::vector<NamedPotential> build_matrix_potentials(const std::vector<PotentialSpec>& specs);

// Three-dimensional scalar potentials v(x).
partialwave::ScalarPotential3D build_potential3d(const PotentialSpec& spec);

PotentialSpec parse_potential_spec(const Json& j, const std::filesystem::path& base_dir = {});

}  // namespace diracac::cli
