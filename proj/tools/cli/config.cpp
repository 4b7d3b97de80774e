#include "config.hpp"

#include "diracac/potential_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace diracac::cli {

namespace {

namespace fs = std::filesystem;
namespace p3 = partialwave::potentials3d;

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void require_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(where + ": unknown key '" + key + "'");
}

double finite(double x, const std::string& what) {
  if (!std::isfinite(x)) fail(what + " must be finite");
  return x;
}

template <class T>
T typed(const Json& j, const std::string& key, const char* type_name) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail("'" + key + "' must be " + type_name);
  }
}

Complex complex_entry(const Json& e, const std::string& what) {
  if (e.is_number()) return finite(e.get<double>(), what);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {finite(e[0].get<double>(), what), finite(e[1].get<double>(), what)};
  fail(what + " entries must be numbers or [re, im] pairs");
}

CMatrix matrix_param(const Json& j, const std::string& key, int m) {
  if (!j.contains(key)) return CMatrix::Zero(m, m);
  const Json& rows = j.at(key);
  if (!rows.is_array() || static_cast<int>(rows.size()) != m)
    fail("'" + key + "' must be an " + std::to_string(m) + " x " + std::to_string(m) + " array");
  CMatrix out(m, m);
  for (int r = 0; r < m; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != m)
      fail("'" + key + "' rows must have " + std::to_string(m) + " entries");
    for (int c = 0; c < m; ++c) out(r, c) = complex_entry(rows[r][c], "'" + key + "'");
  }
  return out;
}

std::vector<int> int_list(const Json& j, const std::string& key, std::vector<int> fallback) {
  if (!j.contains(key)) return fallback;
  if (j.at(key).is_number_integer()) return {j.at(key).get<int>()};
  return typed<std::vector<int>>(j, key, "an integer or a list of integers");
}

LambdaRange parse_range(const Json& j) {
  if (!j.is_object()) fail("lambda ranges must be objects {min, max, count}");
  require_keys(j, {"min", "max", "count"}, "lambda range");
  LambdaRange r;
  r.min = finite(typed<double>(j, "min", "a number"), "lambda min");
  r.max = finite(typed<double>(j, "max", "a number"), "lambda max");
  r.count = j.contains("count") ? typed<int>(j, "count", "an integer") : 1;
  if (r.count < 1) fail("lambda range is empty (count < 1)");
  if (r.max < r.min) fail("lambda range has max < min");
  if (r.count == 1 && r.max != r.min) fail("lambda range with count 1 needs min = max");
  return r;
}

}  // namespace

//------------------------------------------------------------------------------
std::vector<double> LambdaRange::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(count == 1 ? min : min + (max - min) * i / (count - 1));
  return out;
}

double ScenarioConfig::tolerance(const std::string& key, double fallback) const {
  const auto it = tolerances.find(key);
  return (it == tolerances.end() ? fallback : it->second) * tol_scale;
}

std::vector<double> ScenarioConfig::lambda_values(const std::vector<LambdaRange>& fallback) const {
  std::vector<double> out;
  for (const auto& r : lambdas.empty() ? fallback : lambdas) {
    const auto v = r.values();
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<int> ScenarioConfig::truncation_list(const std::vector<int>& fallback) const {
  return truncations.empty() ? fallback : truncations;
}

Json ScenarioConfig::echo() const {
  Json j;
  j["scenario"] = scenario;
  Json pots = Json::array();
  for (const auto& p : potentials) {
    Json e = p.params;
    if (!p.builtin.empty()) e["builtin"] = p.builtin;
    if (!p.file.empty()) e["file"] = fs::path(p.file).filename().string();
    pots.push_back(e);
  }
  j["potentials"] = pots;
  j["grid"] = {{"step", grid_step}, {"r_max", r_max}};
  Json ranges = Json::array();
  for (const auto& r : lambdas) ranges.push_back({{"min", r.min}, {"max", r.max}, {"count", r.count}});
  j["lambda"] = ranges;
  j["truncations"] = truncations;
  j["tolerances"] = tolerances;
  j["params"] = params;
  j["tol_scale"] = tol_scale;
  return j;
}

//------------------------------------------------------------------------------
PotentialSpec parse_potential_spec(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) fail("potential spec must be an object");
  PotentialSpec spec;
  const bool has_builtin = j.contains("builtin"), has_file = j.contains("file");
  if (has_builtin == has_file) fail("potential spec needs exactly one of 'builtin' or 'file'");
  if (has_builtin) spec.builtin = typed<std::string>(j, "builtin", "a string");
  if (has_file) {
    fs::path path = typed<std::string>(j, "file", "a string");
    if (path.is_relative()) path = base_dir / path;
    if (!fs::is_regular_file(path)) fail("potential file not found: " + path.string());
    spec.file = path.string();
  }
  for (const auto& [key, value] : j.items())
    if (key != "builtin" && key != "file") spec.params[key] = value;
  if (spec.params.contains("inner")) {
    // Nested spec (exterior): validate eagerly so file references resolve.
    const PotentialSpec inner = parse_potential_spec(spec.params["inner"], base_dir);
    Json e = inner.params;
    if (!inner.builtin.empty()) e["builtin"] = inner.builtin;
    if (!inner.file.empty()) e["file"] = inner.file;
    spec.params["inner"] = e;
  }
  return spec;
}

ScenarioConfig parse_config(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) fail("config must be an object");
  require_keys(j,
               {"scenario", "potential", "grid", "lambda", "truncations", "tolerances", "output_dir",
                "params"},
               "config");
  ScenarioConfig cfg;
  if (!j.contains("scenario")) fail("config needs 'scenario'");
  cfg.scenario = typed<std::string>(j, "scenario", "a string");

  if (j.contains("potential")) {
    const Json& p = j.at("potential");
    if (p.is_array()) {
      if (p.empty()) fail("'potential' list is empty");
      for (const auto& e : p) cfg.potentials.push_back(parse_potential_spec(e, base_dir));
    } else {
      cfg.potentials.push_back(parse_potential_spec(p, base_dir));
    }
  }
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    if (!g.is_object()) fail("'grid' must be an object");
    require_keys(g, {"step", "r_max"}, "grid");
    if (g.contains("step")) cfg.grid_step = finite(typed<double>(g, "step", "a number"), "grid step");
    if (g.contains("r_max")) cfg.r_max = finite(typed<double>(g, "r_max", "a number"), "grid r_max");
    if (cfg.grid_step <= 0.0 || cfg.r_max <= 0.0) fail("grid step and r_max must be positive");
  }
  if (j.contains("lambda")) {
    const Json& l = j.at("lambda");
    if (l.is_object()) {
      cfg.lambdas.push_back(parse_range(l));
    } else if (l.is_array() && !l.empty()) {
      for (const auto& e : l) cfg.lambdas.push_back(parse_range(e));
    } else {
      fail("'lambda' must be a range or a non-empty list of ranges");
    }
  }
  if (j.contains("truncations")) {
    cfg.truncations = typed<std::vector<int>>(j, "truncations", "a list of integers");
    if (cfg.truncations.empty()) fail("'truncations' is empty");
    for (int n : cfg.truncations)
      if (n < 1) fail("truncations must be positive");
  }
  if (j.contains("tolerances")) {
    const Json& t = j.at("tolerances");
    if (!t.is_object()) fail("'tolerances' must be an object");
    for (const auto& [key, value] : t.items()) {
      if (!value.is_number()) fail("tolerance '" + key + "' must be a number");
      const double x = value.get<double>();
      if (!(x > 0.0) || !std::isfinite(x)) fail("tolerance '" + key + "' must be positive");
      cfg.tolerances[key] = x;
    }
  }
  if (j.contains("output_dir")) cfg.output_dir = typed<std::string>(j, "output_dir", "a string");
  if (j.contains("params")) {
    if (!j.at("params").is_object()) fail("'params' must be an object");
    cfg.params = j.at("params");
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config: " + path);
  Json j;
  try {
    j = Json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j, fs::path(path).parent_path());
}

//------------------------------------------------------------------------------
double param_double(const Json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return finite(typed<double>(j, key, "a number"), "'" + key + "'");
}

int param_int(const Json& j, const std::string& key, int fallback) {
  return j.contains(key) ? typed<int>(j, key, "an integer") : fallback;
}

bool param_bool(const Json& j, const std::string& key, bool fallback) {
  return j.contains(key) ? typed<bool>(j, key, "a boolean") : fallback;
}

std::vector<double> param_doubles(const Json& j, const std::string& key,
                                  const std::vector<double>& fallback) {
  if (!j.contains(key)) return fallback;
  auto out = typed<std::vector<double>>(j, key, "a list of numbers");
  if (out.empty()) fail("'" + key + "' is empty");
  for (double x : out) finite(x, "'" + key + "'");
  return out;
}

std::vector<Complex> param_complexes(const Json& j, const std::string& key,
                                     const std::vector<Complex>& fallback) {
  if (!j.contains(key)) return fallback;
  const Json& l = j.at(key);
  if (!l.is_array() || l.empty()) fail("'" + key + "' must be a non-empty list");
  std::vector<Complex> out;
  for (const auto& e : l) out.push_back(complex_entry(e, "'" + key + "'"));
  return out;
}

//------------------------------------------------------------------------------
std::vector<NamedPotential> build_matrix_potentials(const PotentialSpec& spec) {
  const Json& p = spec.params;
  if (!spec.file.empty()) {
    require_keys(p, {}, "potential file");
    try {
      return {{fs::path(spec.file).filename().string(), load_potential(spec.file)}};
    } catch (const Error& e) {
      fail(std::string("invalid potential file: ") + e.what());
    }
  }
  const std::string& name = spec.builtin;
  auto scalar = [&](ScalarProfile profile) {
    return MatrixPotential::scalar(profile, param_double(p, "a", 0.0), param_double(p, "b", 0.5));
  };
  auto interval = [&](double lo, double hi) {
    const double a = param_double(p, "lo", lo), b = param_double(p, "hi", hi);
    if (!(a >= 0.0 && b > a)) fail(name + ": needs 0 <= lo < hi");
    return std::pair{a, b};
  };
  try {
    if (name == "free") {
      require_keys(p, {"m"}, name);
      const int m = param_int(p, "m", 1);
      if (m < 1) fail("free: m must be positive");
      return {{"free", MatrixPotential::free(m)}};
    }
    if (name == "step") {
      require_keys(p, {"lo", "hi", "a", "b"}, name);
      const auto [lo, hi] = interval(0.0, 1.0);
      return {{"step", scalar(profiles::step(lo, hi))}};
    }
    if (name == "bump") {
      require_keys(p, {"lo", "hi", "a", "b"}, name);
      const auto [lo, hi] = interval(0.0, 1.0);
      return {{"bump", scalar(profiles::bump(lo, hi))}};
    }
    if (name == "power-decay") {
      require_keys(p, {"exponent", "cutoff", "a", "b"}, name);
      const double cutoff = param_double(p, "cutoff", 16.0);
      if (cutoff <= 0.0) fail("power-decay: cutoff must be positive");
      return {{"power-decay", scalar(profiles::power_decay(param_double(p, "exponent", 1.0), cutoff))}};
    }
    if (name == "matrix-bump") {
      require_keys(p, {"m", "lo", "hi", "a", "b"}, name);
      const int m = param_int(p, "m", 2);
      if (m < 1) fail("matrix-bump: m must be positive");
      const auto [lo, hi] = interval(0.0, 1.0);
      return {{"matrix-bump", MatrixPotential::from_terms(
                                  m, {{profiles::bump(lo, hi), matrix_param(p, "a", m),
                                       matrix_param(p, "b", m)}})}};
    }
    if (name == "random-step" || name == "random-bump") {
      require_keys(p, {"m", "count", "support", "seed", "amplitude", "pieces"}, name);
      const auto ms = int_list(p, "m", {1});
      const int count = param_int(p, "count", 1);
      const double support = param_double(p, "support", 2.0);
      const int seed = param_int(p, "seed", 1);
      const double amplitude = param_double(p, "amplitude", 1.0);
      const int pieces = param_int(p, "pieces", name == "random-step" ? 4 : 3);
      if (ms.empty() || count < 1 || support <= 0.0 || amplitude < 0.0 || pieces < 1)
        fail(name + ": needs m >= 1, count >= 1, support > 0, amplitude >= 0, pieces >= 1");
      std::vector<NamedPotential> out;
      for (int k = 0; k < count; ++k) {
        const int m = ms[static_cast<std::size_t>(k) % ms.size()];
        if (m < 1) fail(name + ": m must be positive");
        const auto s = static_cast<std::uint64_t>(seed + k);
        out.push_back({name + "-" + std::to_string(k),
                       name == "random-step"
                           ? random_step_potential(m, support, s, amplitude, pieces)
                           : random_bump_potential(m, support, s, amplitude, pieces)});
      }
      return out;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(name + ": " + e.what());
  }
  fail("unknown one-dimensional potential '" + name + "'");
}

std::vector<NamedPotential> build_matrix_potentials(const std::vector<PotentialSpec>& specs) {
  std::vector<NamedPotential> out;
  for (const auto& s : specs) {
    auto more = build_matrix_potentials(s);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

partialwave::ScalarPotential3D build_potential3d(const PotentialSpec& spec) {
  if (!spec.file.empty()) fail("three-dimensional potentials must be built-in");
  const Json& p = spec.params;
  const std::string& name = spec.builtin;
  auto c_v = [&] {
    const double c = param_double(p, "c_v", 0.02);
    if (c < 0.0) fail(name + ": c_v must be non-negative");
    return c;
  };
  if (name == "zero") {
    require_keys(p, {}, name);
    return p3::zero();
  }
  if (name == "power-decay") {
    require_keys(p, {"c_v", "epsilon", "annulus_zero"}, name);
    const double eps = param_double(p, "epsilon", 0.1);
    if (eps <= 0.0) fail("power-decay: epsilon must be positive");
    return p3::power_decay(c_v(), eps, param_bool(p, "annulus_zero", true));
  }
  if (name == "modulated-power-decay") {
    require_keys(p, {"c_v", "epsilon", "modulation"}, name);
    const double m = param_double(p, "modulation", 0.5);
    if (std::abs(m) > 1.0) fail("modulated-power-decay: |modulation| must be at most 1");
    return p3::modulated_power_decay(c_v(), param_double(p, "epsilon", 0.1), m);
  }
  if (name == "angular-modulated") {
    require_keys(p, {"c_v", "exponent"}, name);
    return p3::angular_modulated(c_v(), param_double(p, "exponent", 0.6));
  }
  if (name == "smooth-power-decay") {
    require_keys(p, {"c_v", "epsilon", "inner", "outer"}, name);
    const double inner = param_double(p, "inner", 0.5), outer = param_double(p, "outer", 1.5);
    if (!(inner >= 0.0 && outer > inner)) fail("smooth-power-decay: needs 0 <= inner < outer");
    return p3::smooth_power_decay(c_v(), param_double(p, "epsilon", 0.1), inner, outer);
  }
  if (name == "radial-bump") {
    require_keys(p, {"c_v", "lo", "hi"}, name);
    const double lo = param_double(p, "lo", 2.0), hi = param_double(p, "hi", 3.0);
    if (!(lo >= 0.0 && hi > lo)) fail("radial-bump: needs 0 <= lo < hi");
    return p3::radial_bump(c_v(), lo, hi);
  }
  if (name == "exterior") {
    require_keys(p, {"radius", "inner"}, name);
    if (!p.contains("inner")) fail("exterior: needs an 'inner' potential");
    const double radius = param_double(p, "radius", 1.0);
    if (radius <= 0.0) fail("exterior: radius must be positive");
    return p3::exterior(build_potential3d(parse_potential_spec(p.at("inner"))), radius);
  }
  fail("unknown three-dimensional potential '" + name + "'");
}

}  // namespace diracac::cli
