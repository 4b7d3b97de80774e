#include "scenarios.hpp"

#include "diracac/dirac1d.hpp"
#include "diracac/greens3d.hpp"
#include "diracac/linalg.hpp"
#include "diracac/oracles.hpp"
#include "diracac/partialwave.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <thread>

#ifndef DIRACAC_VERSION
#define DIRACAC_VERSION "0.0.0"
#endif

namespace diracac::cli {

namespace {

namespace pw = partialwave;
namespace g3 = greens3d;

const Complex kI(0.0, 1.0);

//------------------------------------------------------------------------------
// Index-ordered parallel map. Results do not depend on the thread count.
template <class F>
auto parallel_map(std::size_t n, int threads, F f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  auto body = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += workers) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1 || n < 2) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string label(const char* prefix, double x) { return std::string(prefix) + "=" + cell(x); }

dirac1d::SolverOptions solver_options(const ScenarioConfig& cfg) {
  dirac1d::SolverOptions opts;
  const std::string route = cfg.params.value("route", std::string("auto"));
  if (route == "picard") opts.route = dirac1d::JostRoute::Picard;
  else if (route == "ode") opts.route = dirac1d::JostRoute::Ode;
  else if (route != "auto") throw ConfigError("route must be auto, picard or ode");
  return opts;
}

std::vector<PotentialSpec> specs_or(const ScenarioConfig& cfg, const Json& fallback) {
  if (!cfg.potentials.empty()) return cfg.potentials;
  std::vector<PotentialSpec> out;
  for (const auto& e : fallback) out.push_back(parse_potential_spec(e));
  return out;
}

std::vector<NamedPotential> matrix_potentials(const ScenarioConfig& cfg, const Json& fallback) {
  return build_matrix_potentials(specs_or(cfg, fallback));
}

pw::ScalarPotential3D potential3d(const ScenarioConfig& cfg, const Json& fallback) {
  const auto specs = specs_or(cfg, Json::array({fallback}));
  if (specs.size() != 1) throw ConfigError("this scenario takes a single potential");
  return build_potential3d(specs.front());
}

std::pair<double, double> interval_param(const Json& p, const std::string& key,
                                         std::pair<double, double> fallback) {
  const auto v = param_doubles(p, key, {fallback.first, fallback.second});
  if (v.size() != 2 || v[1] < v[0]) throw ConfigError("'" + key + "' must be [lo, hi] with lo <= hi");
  return {v[0], v[1]};
}

const Json kRandomFamily = Json::array(
    {{{"builtin", "random-step"}, {"m", {1, 2, 3}}, {"count", 20}, {"support", 2.0}, {"seed", 1}}});

//------------------------------------------------------------------------------
// Jost data at the origin on a lambda sweep, shared by the wronskian and
// conservation scenarios.
struct JostSweep {
  std::vector<CMatrix> f;  // stacked (F1(0), F2(0)) per lambda
  std::optional<Check> error;
};

std::vector<JostSweep> jost_sweep(const ScenarioConfig& cfg, const std::vector<NamedPotential>& pots,
                                  const std::vector<double>& lambdas,
                                  const std::function<CMatrix(const MatrixPotential&, double)>& solve,
                                  Stage stage) {
  return parallel_map(pots.size(), cfg.threads, [&](std::size_t k) {
    JostSweep out;
    try {
      for (double l : lambdas) out.f.push_back(solve(pots[k].potential, l));
    } catch (const std::exception& e) {
      out.error = Check::error("jost[" + pots[k].label + "]", stage, e);
    }
    return out;
  });
}

void wronskian_run(const ScenarioConfig& cfg, RunReport& rep) {
  const auto pots = matrix_potentials(cfg, kRandomFamily);
  const auto lambdas = cfg.lambda_values({{-10.0, 10.0, 100}});
  const auto opts = solver_options(cfg);
  const auto sweeps = jost_sweep(
      cfg, pots, lambdas,
      [&](const MatrixPotential& p, double l) { return dirac1d::jost_at_zero(p, l, opts); },
      Stage::Main);

  DataTable t{"defects", {"potential", "m", "lambda", "defect"}, {}};
  double worst = 0.0;
  for (std::size_t k = 0; k < pots.size(); ++k) {
    if (sweeps[k].error) {
      rep.checks.push_back(*sweeps[k].error);
      continue;
    }
    const int m = pots[k].potential.size();
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const CMatrix& f = sweeps[k].f[i];
      const double d = dirac1d::wronskian_defect(f.topRows(m), f.bottomRows(m)).norm();
      worst = std::max(worst, d);
      t.add({pots[k].label, cell(m), cell(lambdas[i]), cell(d)});
    }
  }
  rep.tables.push_back(std::move(t));
  rep.checks.push_back(Check::at_most("max_wronskian_defect", worst, cfg.tolerance("defect", 1e-6)));
}

void conservation_run(const ScenarioConfig& cfg, RunReport& rep) {
  const auto pots = matrix_potentials(cfg, kRandomFamily);
  const auto lambdas = cfg.lambda_values({{-10.0, 10.0, 100}});
  const auto opts = solver_options(cfg);
  const auto sweeps = jost_sweep(
      cfg, pots, lambdas,
      [&](const MatrixPotential& p, double l) { return dirac1d::jost_at_zero(p, l, opts); },
      Stage::Main);
  const Complex probe = param_complexes(cfg.params, "complex_lambda", {Complex(1.0, 1.0)}).front();
  if (probe.imag() <= 0.0) throw ConfigError("complex_lambda must lie in the upper half-plane");

  DataTable t{"conservation", {"potential", "m", "lambda", "frobenius_defect"}, {}};
  DataTable c{"complex", {"potential", "m", "lambda_re", "lambda_im", "min_eigenvalue"}, {}};
  double worst = 0.0, lowest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pots.size(); ++k) {
    if (sweeps[k].error) {
      rep.checks.push_back(*sweeps[k].error);
      continue;
    }
    const auto& pot = pots[k].potential;
    const int m = pot.size();
    const CMatrix id = CMatrix::Identity(m, m);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const CMatrix& f = sweeps[k].f[i];
      const auto sp = dirac1d::scattering_coefficients(lambdas[i], f.topRows(m), f.bottomRows(m));
      const double d = (sp.A.adjoint() * sp.A - sp.B.adjoint() * sp.B - id).norm();
      worst = std::max(worst, d);
      t.add({pots[k].label, cell(m), cell(lambdas[i]), cell(d)});
    }
    try {
      const CMatrix f = dirac1d::jost_at_zero(pot, probe, opts);
      const auto sp = dirac1d::scattering_coefficients(probe, f.topRows(m), f.bottomRows(m));
      const double e = linalg::min_eigenvalue(sp.A.adjoint() * sp.A - sp.B.adjoint() * sp.B - id);
      lowest = std::min(lowest, e);
      c.add({pots[k].label, cell(m), cell(probe.real()), cell(probe.imag()), cell(e)});
    } catch (const std::exception& e) {
      rep.checks.push_back(Check::error("complex[" + pots[k].label + "]", Stage::Main, e));
    }
  }
  rep.tables.push_back(std::move(t));
  rep.tables.push_back(std::move(c));
  rep.checks.push_back(Check::at_most("max_conservation_defect", worst, cfg.tolerance("defect", 1e-6)));
  rep.checks.push_back(Check::at_least("min_eigenvalue_complex_lambda", lowest,
                                       -cfg.tolerance("min_eigenvalue", 1e-6)));
}

// Main Jost data against products of matrix exponentials.
void jost_oracle(const ScenarioConfig& cfg, RunReport& rep) {
  const auto pots = matrix_potentials(cfg, kRandomFamily);
  const auto lambdas = cfg.lambda_values({{-10.0, 10.0, 100}});
  const auto opts = solver_options(cfg);
  const auto main = jost_sweep(
      cfg, pots, lambdas,
      [&](const MatrixPotential& p, double l) { return dirac1d::jost_at_zero(p, l, opts); },
      Stage::Main);
  const auto oracle = jost_sweep(
      cfg, pots, lambdas,
      [](const MatrixPotential& p, double l) { return oracles::jost_transfer(p, l); },
      Stage::Oracle);

  DataTable t{"oracle", {"potential", "m", "lambda", "main_norm", "relative_discrepancy"}, {}};
  double worst = 0.0;
  for (std::size_t k = 0; k < pots.size(); ++k) {
    if (main[k].error) rep.checks.push_back(*main[k].error);
    if (oracle[k].error) rep.checks.push_back(*oracle[k].error);
    if (main[k].error || oracle[k].error) continue;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const double n = main[k].f[i].norm();
      const double d = (main[k].f[i] - oracle[k].f[i]).norm() / n;
      worst = std::max(worst, d);
      t.add({pots[k].label, cell(pots[k].potential.size()), cell(lambdas[i]), cell(n), cell(d)});
    }
  }
  rep.tables.push_back(std::move(t));
  rep.checks.push_back(Check::at_most("max_relative_discrepancy", worst,
                                      cfg.tolerance("oracle", 1e-6), Stage::Compare));
}

//------------------------------------------------------------------------------
const Json kDensityPotentials = Json::array(
    {{{"builtin", "step"}, {"lo", 0.0}, {"hi", 1.0}, {"b", 0.5}},
     {{"builtin", "bump"}, {"lo", 0.2}, {"hi", 1.2}, {"b", 0.8}}});

oracles::ResolventOracleOptions resolvent_options(const ScenarioConfig& cfg, double step) {
  oracles::ResolventOracleOptions o;
  o.length = param_double(cfg.params, "oracle_length", o.length);
  o.epsilon = param_double(cfg.params, "oracle_epsilon", o.epsilon);
  o.step = step;
  if (o.length <= 0.0 || o.epsilon <= 0.0 || o.step <= 0.0)
    throw ConfigError("oracle_length, oracle_epsilon and oracle_step must be positive");
  return o;
}

// sup over lambda of ||sigma'_main - sigma'_oracle||_F, or an error check.
struct DensityComparison {
  std::vector<CMatrix> main, oracle;
  std::optional<Check> main_error, oracle_error;
};

DensityComparison compare_densities(const ScenarioConfig& cfg, const NamedPotential& p,
                                    const std::vector<double>& lambdas, double step,
                                    bool with_main = true) {
  DensityComparison out;
  if (with_main) {
    try {
      out.main = dirac1d::spectral_density(p.potential, lambdas, solver_options(cfg), cfg.threads)
                     .densities;
    } catch (const std::exception& e) {
      out.main_error = Check::error("density[" + p.label + "]", Stage::Main, e);
    }
  }
  const auto opts = resolvent_options(cfg, step);
  try {
    out.oracle = parallel_map(lambdas.size(), cfg.threads, [&](std::size_t i) {
      return oracles::resolvent_density(p.potential, lambdas[i], opts);
    });
  } catch (const std::exception& e) {
    out.oracle_error = Check::error("resolvent[" + p.label + "]", Stage::Oracle, e);
  }
  return out;
}

void density_run(const ScenarioConfig& cfg, RunReport& rep, bool study) {
  const auto pots = matrix_potentials(cfg, kDensityPotentials);
  const auto lambdas = cfg.lambda_values({{-4.0, 4.0, 17}});
  const double step = param_double(cfg.params, "oracle_step", 2e-3);
  const double tol = cfg.tolerance("density", 1e-2);

  DataTable t{"density", {"potential", "lambda", "main_11", "oracle_11", "discrepancy"}, {}};
  DataTable conv{"convergence", {"potential", "oracle_step", "sup_discrepancy"}, {}};
  for (const auto& p : pots) {
    const auto cmp = compare_densities(cfg, p, lambdas, step);
    if (cmp.main_error) rep.checks.push_back(*cmp.main_error);
    if (cmp.oracle_error) rep.checks.push_back(*cmp.oracle_error);
    if (cmp.main_error || cmp.oracle_error) continue;
    double sup = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const double d = (cmp.main[i] - cmp.oracle[i]).norm();
      sup = std::max(sup, d);
      t.add({p.label, cell(lambdas[i]), cell(cmp.main[i](0, 0).real()),
             cell(cmp.oracle[i](0, 0).real()), cell(d)});
    }
    rep.checks.push_back(Check::at_most("sup_discrepancy[" + p.label + "]", sup, tol, Stage::Compare));

    if (!study) continue;
    // Oracle-only convergence study on coarsened grids.
    const auto steps = param_doubles(cfg.params, "coarsen_steps", {0.005, 0.01, 0.02, 0.04});
    std::vector<double> sups;
    for (double h : steps) {
      const auto coarse = compare_densities(cfg, p, lambdas, h, false);
      if (coarse.oracle_error) {
        rep.checks.push_back(*coarse.oracle_error);
        sups.push_back(std::nan(""));
        continue;
      }
      double s = 0.0;
      for (std::size_t i = 0; i < lambdas.size(); ++i)
        s = std::max(s, (cmp.main[i] - coarse.oracle[i]).norm());
      sups.push_back(s);
      conv.add({p.label, cell(h), cell(s)});
    }
    int violations = 0;
    for (std::size_t i = 1; i < sups.size(); ++i)
      if (!(sups[i] > sups[i - 1])) ++violations;
    rep.checks.push_back(Check::at_most("monotone_in_step[" + p.label + "]", violations, 0.0,
                                        Stage::Compare));
  }
  rep.tables.push_back(std::move(t));
  if (study) rep.tables.push_back(std::move(conv));
}

//------------------------------------------------------------------------------
const Json kEntropyPotentials = Json::array(
    {{{"builtin", "bump"}, {"lo", 0.2}, {"hi", 1.2}, {"b", 0.8}},
     {{"builtin", "matrix-bump"},
      {"m", 2},
      {"lo", 0.1},
      {"hi", 1.1},
      {"a", {{0.3, {0.0, 0.2}}, {{0.0, -0.2}, -0.1}}},
      {"b", {{0.5, 0.1}, {0.1, 0.4}}}}});

void entropy_run(const ScenarioConfig& cfg, RunReport& rep) {
  const auto pots = matrix_potentials(cfg, kEntropyPotentials);
  const auto interval = interval_param(cfg.params, "interval", {-5.0, 5.0});
  const double y_scalar = param_double(cfg.params, "y_scalar", 200.0);
  const double y_matrix = param_double(cfg.params, "y_matrix", 400.0);
  const auto opts = solver_options(cfg);

  DataTable t{"entropy",
              {"potential", "m", "lo", "hi", "lhs", "explicit_bound", "rhs_l2", "y",
               "asymptotic_error"},
              {}};
  for (const auto& p : pots) {
    const int m = p.potential.size();
    const CVector e1 = CVector::Unit(m, 0);
    const double y = m == 1 ? y_scalar : y_matrix;
    try {
      const auto sb =
          dirac1d::szego_interval_bound(p.potential, e1, interval, opts, 0.5, 12, cfg.threads);
      const double bound = dirac1d::szego_explicit_bound(interval, sb.rhs_l2);
      // The 1/y coefficient is Hermitian; its skew part is of higher order.
      const auto chk = dirac1d::f2_asymptotic_check(p.potential, y, opts);
      const double scale = chk.predicted.norm();
      const double err =
          (linalg::hermitian_part(chk.measured) - chk.predicted).norm() / (scale > 0.0 ? scale : 1.0);
      t.add({p.label, cell(m), cell(interval.first), cell(interval.second), cell(sb.lhs),
             cell(bound), cell(sb.rhs_l2), cell(y), cell(err)});
      rep.checks.push_back(Check::at_least("szego_lower_bound[" + p.label + "]", sb.lhs, bound));
      rep.checks.push_back(Check::at_most(
          "f2_asymptotic_error[" + p.label + "]", err,
          m == 1 ? cfg.tolerance("asymptotic_scalar", 0.02) : cfg.tolerance("asymptotic_matrix", 0.05)));
    } catch (const std::exception& e) {
      rep.checks.push_back(Check::error("entropy[" + p.label + "]", Stage::Main, e));
    }
  }
  rep.tables.push_back(std::move(t));
}

//------------------------------------------------------------------------------
pw::TestElement test_element(const ScenarioConfig& cfg) {
  const double lo = param_double(cfg.params, "test_lo", 1.1);
  const double hi = param_double(cfg.params, "test_hi", 1.9);
  if (!(lo >= 1.0 && hi > lo && hi <= 2.0)) throw ConfigError("test element needs 1 <= test_lo < test_hi <= 2");
  return pw::bump_test_element(lo, hi);
}

pw::MeasureOptions measure_options(const ScenarioConfig& cfg) {
  pw::MeasureOptions o;
  o.r_max = cfg.r_max;
  o.grid_step = cfg.grid_step;
  o.threads = cfg.threads;
  return o;
}

const Json kCoupledPotential = {{"builtin", "modulated-power-decay"}, {"c_v", 0.5}};
const Json kSupportPotential =
    Json::array({{{"builtin", "power-decay"}, {"exponent", 1.0}, {"cutoff", 16.0}, {"b", 1.0}}});

std::string truncation_family(const ScenarioConfig& cfg) {
  const std::string f = cfg.params.value("family", std::string("channel"));
  if (f != "channel" && f != "support") throw ConfigError("family must be 'channel' or 'support'");
  return f;
}

std::vector<double> szego_values(const ScenarioConfig& cfg, const std::vector<int>& ns) {
  if (truncation_family(cfg) == "channel") {
    const auto interval = interval_param(cfg.params, "interval", {-2.0, 2.0});
    return pw::entropy_uniformity(test_element(cfg), potential3d(cfg, kCoupledPotential), interval,
                                  ns, measure_options(cfg));
  }
  const auto pots = matrix_potentials(cfg, kSupportPotential);
  if (pots.size() != 1) throw ConfigError("the support family takes a single potential");
  const auto interval = interval_param(cfg.params, "interval", {-5.0, 5.0});
  const auto& pot = pots.front().potential;
  const CVector e1 = CVector::Unit(pot.size(), 0);
  const auto opts = solver_options(cfg);
  return parallel_map(ns.size(), cfg.threads, [&](std::size_t i) {
    return dirac1d::szego_interval_bound(pot.truncated(ns[i]), e1, interval, opts).lhs;
  });
}

std::vector<int> szego_truncations(const ScenarioConfig& cfg) {
  return cfg.truncation_list(truncation_family(cfg) == "channel" ? std::vector<int>{1, 2, 4, 8}
                                                                 : std::vector<int>{2, 4, 8, 16});
}

void szego_run(const ScenarioConfig& cfg, RunReport& rep) {
  const auto ns = szego_truncations(cfg);
  std::vector<double> values;
  try {
    values = szego_values(cfg, ns);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    rep.checks.push_back(Check::error("entropy_values", Stage::Main, e));
    return;
  }
  DataTable t{"entropy", {"n", "value"}, {}};
  for (std::size_t i = 0; i < ns.size(); ++i) t.add({cell(ns[i]), cell(values[i])});
  rep.tables.push_back(std::move(t));
  const std::size_t last = static_cast<std::size_t>(
      std::max_element(ns.begin(), ns.end()) - ns.begin());
  const double floor = values[last] - cfg.tolerance("drop", 0.5);
  for (std::size_t i = 0; i < ns.size(); ++i)
    rep.checks.push_back(Check::at_least("entropy[n=" + cell(ns[i]) + "]", values[i], floor));
}

// Each truncation computed on its own against the batched call.
void szego_oracle(const ScenarioConfig& cfg, RunReport& rep) {
  const auto ns = szego_truncations(cfg);
  std::vector<double> batched, single;
  try {
    batched = szego_values(cfg, ns);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    rep.checks.push_back(Check::error("entropy_values", Stage::Main, e));
    return;
  }
  try {
    for (int n : ns) single.push_back(szego_values(cfg, {n}).front());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    rep.checks.push_back(Check::error("entropy_single", Stage::Oracle, e));
    return;
  }
  DataTable t{"oracle", {"n", "batched", "single", "relative_discrepancy"}, {}};
  double worst = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double d = std::abs(batched[i] - single[i]) / std::max(1.0, std::abs(single[i]));
    worst = std::max(worst, d);
    t.add({cell(ns[i]), cell(batched[i]), cell(single[i]), cell(d)});
  }
  rep.tables.push_back(std::move(t));
  rep.checks.push_back(Check::at_most("max_relative_discrepancy", worst,
                                      cfg.tolerance("oracle", 1e-6), Stage::Compare));
}

//------------------------------------------------------------------------------
const Json kRadialPotential = {{"builtin", "power-decay"}, {"c_v", 0.5}, {"epsilon", 0.1}};

void partialwave_run(const ScenarioConfig& cfg, RunReport& rep) {
  const auto v = potential3d(cfg, kRadialPotential);
  const auto ns = cfg.truncation_list({1, 2, 4, 8});
  const auto lambdas = cfg.lambda_values({{-4.0, 4.0, 17}});
  const auto test = test_element(cfg);
  const auto opts = measure_options(cfg);
  const int n_max = *std::max_element(ns.begin(), ns.end());

  pw::TruncatedSystem full;
  try {
    full = pw::build_system(v, n_max, RadialGrid::uniform(cfg.r_max, cfg.grid_step), opts.coupling);
  } catch (const std::exception& e) {
    rep.checks.push_back(Check::error("coupling", Stage::Main, e));
    return;
  }

  double off_diagonal = 0.0;
  for (const auto& b : full.b)
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (i != j) off_diagonal = std::max(off_diagonal, std::abs(b(i, j)));

  DataTable coupling{"coupling", {"n", "a_channel_l2", "b_column_l2", "coupling_bound_l2"}, {}};
  double bound = 0.0;
  try {
    bound = pw::coupling_bound_l2(v, cfg.r_max, opts.coupling);
  } catch (const std::exception& e) {
    rep.checks.push_back(Check::error("coupling_bound", Stage::Main, e));
  }
  double a_dev = 0.0, b_excess = -std::numeric_limits<double>::infinity();
  for (int n : ns) {
    const auto sys = pw::truncate(full, n);
    const double a = pw::a_channel_l2(sys, 0), b = pw::b_column_l2(sys);
    a_dev = std::max(a_dev, std::abs(a - 1.0));
    b_excess = std::max(b_excess, (b - bound) / bound);
    coupling.add({cell(n), cell(a), cell(b), cell(bound)});
  }
  rep.tables.push_back(std::move(coupling));
  rep.checks.push_back(Check::at_most("a_channel_l2_deviation", a_dev, cfg.tolerance("a_norm", 1e-6)));
  rep.checks.push_back(Check::at_most("b_column_l2_relative_excess", b_excess,
                                      cfg.tolerance("bound_slack", 1e-6)));

  DataTable t{"measure", {"n", "lambda", "mu_prime"}, {}};
  std::vector<std::vector<double>> mus;
  for (int n : ns) {
    try {
      const auto m = pw::test_element_measure(test, full, n, lambdas, opts);
      for (std::size_t i = 0; i < lambdas.size(); ++i)
        t.add({cell(n), cell(lambdas[i]), cell(m.mu_prime[i])});
      mus.push_back(m.mu_prime);
    } catch (const std::exception& e) {
      rep.checks.push_back(Check::error("measure[n=" + cell(n) + "]", Stage::Main, e));
    }
  }
  rep.tables.push_back(std::move(t));

  if (v.radial) {
    rep.checks.push_back(Check::at_most("off_diagonal_coupling", off_diagonal,
                                        cfg.tolerance("decoupling", 1e-8)));
    if (mus.size() == ns.size()) {
      double scale = 0.0, spread = 0.0;
      for (double x : mus.front()) scale = std::max(scale, std::abs(x));
      for (const auto& mu : mus)
        for (std::size_t i = 0; i < mu.size(); ++i)
          spread = std::max(spread, std::abs(mu[i] - mus.front()[i]));
      rep.checks.push_back(Check::at_most("measure_spread_over_n", spread / (scale > 0.0 ? scale : 1.0),
                                          cfg.tolerance("measure", 1e-8)));
    }
  }
}

//------------------------------------------------------------------------------
g3::Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  g3::Vec3 v(n(rng), n(rng), n(rng));
  return v / v.norm();
}

void clifford_run(const ScenarioConfig& cfg, RunReport& rep) {
  const int count = param_int(cfg.params, "count", 1000);
  if (count < 1) throw ConfigError("count must be positive");
  std::mt19937_64 rng(static_cast<std::uint64_t>(param_int(cfg.params, "seed", 1)));
  DataTable t{"defects", {"index", "gx", "gy", "gz", "square", "projector", "sandwich"}, {}};
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const g3::Vec3 g = random_unit(rng);
    const auto d = g3::clifford_identity_defects(g);
    worst = std::max({worst, d[0], d[1], d[2]});
    t.add({cell(i), cell(g(0)), cell(g(1)), cell(g(2)), cell(d[0]), cell(d[1]), cell(d[2])});
  }
  rep.tables.push_back(std::move(t));
  rep.checks.push_back(Check::at_most("max_identity_defect", worst, cfg.tolerance("identity", 1e-13)));
  rep.checks.push_back(Check::at_most("anticommutator_defect", g3::anticommutator_defect(),
                                      cfg.tolerance("anticommutator", 1e-13)));
  rep.checks.push_back(Check::at_most("quaternion_defect", g3::quaternion_defect(), 0.0));
}

void free_green_run(const ScenarioConfig& cfg, RunReport& rep) {
  const int count = param_int(cfg.params, "count", 50);
  const double dmin = param_double(cfg.params, "min_distance", 0.5);
  const double dmax = param_double(cfg.params, "max_distance", 20.0);
  const double box = param_double(cfg.params, "box", 3.0);
  const double h = param_double(cfg.params, "step", 1e-3);
  const auto lambdas = param_complexes(cfg.params, "lambdas", {kI});
  if (count < 1 || !(dmin > 0.0 && dmax >= dmin) || box < 0.0 || h <= 0.0)
    throw ConfigError("free-green-residual needs count >= 1, 0 < min_distance <= max_distance, step > 0");
  for (Complex l : lambdas)
    if (l.imag() < 0.0) throw ConfigError("lambdas must lie in the closed upper half-plane");

  std::mt19937_64 rng(static_cast<std::uint64_t>(param_int(cfg.params, "seed", 1)));
  std::uniform_real_distribution<double> dist(dmin, dmax), pos(-box, box);
  std::vector<std::pair<g3::Vec3, g3::Vec3>> pairs;
  for (int i = 0; i < count; ++i) {
    const g3::Vec3 s(pos(rng), pos(rng), pos(rng));
    pairs.emplace_back(s + dist(rng) * random_unit(rng), s);
  }
  DataTable t{"residuals",
              {"index", "lambda_re", "lambda_im", "distance", "residual", "relative_residual"},
              {}};
  double worst = 0.0;
  for (Complex l : lambdas) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [x, s] = pairs[i];
      try {
        const double r = g3::free_green_residual(l, x, s, h);
        const double n = g3::free_green(l, x, s).value.norm();
        worst = std::max(worst, r);
        t.add({cell(i), cell(l.real()), cell(l.imag()), cell((x - s).norm()), cell(r), cell(r / n)});
      } catch (const std::exception& e) {
        rep.checks.push_back(Check::error("residual[" + cell(i) + "]", Stage::Main, e));
      }
    }
  }
  rep.tables.push_back(std::move(t));
  rep.checks.push_back(Check::at_most("max_residual", worst, cfg.tolerance("residual", 1e-4)));
}

//------------------------------------------------------------------------------
struct BornRun {
  double c_v = 0.0;
  std::shared_ptr<g3::BornSeries> series;
  std::optional<Check> error;
};

g3::BornOptions born_options(const ScenarioConfig& cfg) {
  g3::BornOptions o;
  o.max_terms = param_int(cfg.params, "max_terms", o.max_terms);
  o.tol = param_double(cfg.params, "born_tol", o.tol);
  o.table_radius = param_double(cfg.params, "table_radius", o.table_radius);
  if (o.max_terms < 1 || o.tol <= 0.0 || o.table_radius < 10.0)
    throw ConfigError("born options need max_terms >= 1, born_tol > 0, table_radius >= 10");
  return o;
}

std::vector<double> born_radii(const ScenarioConfig& cfg, double table_radius) {
  const auto radii = param_doubles(cfg.params, "radii", {5.0, 10.0, 20.0, 50.0});
  for (double r : radii)
    if (!(r > 0.0 && r <= table_radius)) throw ConfigError("radii must lie in (0, table_radius]");
  return radii;
}

std::vector<BornRun> born_runs(const ScenarioConfig& cfg) {
  const auto cvs = param_doubles(cfg.params, "c_v", {0.04, 0.02, 0.01});
  const double eps = param_double(cfg.params, "epsilon", 0.1);
  const auto opts = born_options(cfg);
  for (double c : cvs)
    if (c < 0.0) throw ConfigError("c_v must be non-negative");
  return parallel_map(cvs.size(), cfg.threads, [&](std::size_t k) {
    BornRun run{cvs[k], nullptr, std::nullopt};
    try {
      run.series = std::make_shared<g3::BornSeries>(
          pw::potentials3d::power_decay(cvs[k], eps, false), g3::free_field(), opts);
    } catch (const std::exception& e) {
      run.error = Check::error("born[" + label("C_v", cvs[k]) + "]", Stage::Main, e);
    }
    return run;
  });
}

// G_i(x, 0) from the series with the closed-form leading term.
g3::BornResult born_green(const g3::BornSeries& series, const g3::Vec3& x, double tol) {
  g3::BornResult out = g3::born_evaluate(series, x, tol);
  out.green.value += g3::free_green(kI, x, g3::Vec3::Zero()).value - out.terms.front().value;
  return out;
}

g3::Vec3 born_direction(const ScenarioConfig& cfg) {
  const auto d = param_doubles(cfg.params, "direction", {0.0, 0.0, 1.0});
  if (d.size() != 3) throw ConfigError("direction must have three components");
  const g3::Vec3 v(d[0], d[1], d[2]);
  if (v.norm() == 0.0) throw ConfigError("direction must be non-zero");
  return v / v.norm();
}

void born_series_run(const ScenarioConfig& cfg, RunReport& rep) {
  const auto opts = born_options(cfg);
  const auto radii = born_radii(cfg, opts.table_radius);
  const auto dir = born_direction(cfg);
  const auto runs = born_runs(cfg);
  DataTable terms{"terms", {"c_v", "radius", "term", "scaled_norm", "ratio"}, {}};
  DataTable sups{"sup_norms", {"c_v", "term", "sup_norm"}, {}};
  for (const auto& run : runs) {
    const std::string tag = "[" + label("C_v", run.c_v) + "]";
    if (run.error) {
      rep.checks.push_back(*run.error);
      continue;
    }
    for (int n = 0; n < run.series->size(); ++n)
      sups.add({cell(run.c_v), cell(n), cell(run.series->sup_norms()[static_cast<std::size_t>(n)])});
    double worst = 0.0;
    bool converged = run.series->converged();
    for (double r : radii) {
      try {
        const auto res = born_green(*run.series, r * dir, opts.tol);
        for (std::size_t n = 0; n < res.terms.size(); ++n)
          terms.add({cell(run.c_v), cell(r), cell(n), cell(res.terms[n].scaled_norm),
                     n == 0 ? std::string() : cell(res.ratios[n - 1])});
        for (double q : res.ratios) worst = std::max(worst, q);
        converged = converged && res.converged;
      } catch (const std::exception& e) {
        rep.checks.push_back(Check::error("evaluate" + tag + "[r=" + cell(r) + "]", Stage::Main, e));
      }
    }
    rep.checks.push_back(Check::at_most("max_term_ratio" + tag, worst, cfg.tolerance("ratio", 0.5)));
    rep.checks.push_back(Check::at_least("converged" + tag, converged ? 1.0 : 0.0, 1.0));
  }
  rep.tables.push_back(std::move(sups));
  rep.tables.push_back(std::move(terms));
}

void asymptotic_split_run(const ScenarioConfig& cfg, RunReport& rep) {
  const auto opts = born_options(cfg);
  const auto radii = born_radii(cfg, opts.table_radius);
  const auto dir = born_direction(cfg);
  const double probe = param_double(cfg.params, "p1_radius", 20.0);
  const auto runs = born_runs(cfg);

  DataTable t{"split", {"c_v", "radius", "p1_deviation", "p2_norm", "reconstruction_error"}, {}};
  double p2_max = 0.0, recon = 0.0;
  std::vector<std::pair<double, double>> p1_at_probe;  // (c_v, ||P1 - 1||)
  for (const auto& run : runs) {
    if (run.error) {
      rep.checks.push_back(*run.error);
      continue;
    }
    std::vector<double> rs = radii;
    if (std::find(rs.begin(), rs.end(), probe) == rs.end()) rs.push_back(probe);
    for (double r : rs) {
      try {
        const auto res = born_green(*run.series, r * dir, opts.tol);
        const auto s = g3::asymptotic_split(res.green);
        const double p1 = (s.p1 - g3::Matrix4::Identity()).norm();
        const double p2 = s.p2.norm();
        const double e = (g3::reconstruct(s) - res.green.value).norm() / res.green.value.norm();
        t.add({cell(run.c_v), cell(r), cell(p1), cell(p2), cell(e)});
        recon = std::max(recon, e);
        if (std::find(radii.begin(), radii.end(), r) != radii.end()) p2_max = std::max(p2_max, p2);
        if (r == probe) p1_at_probe.emplace_back(run.c_v, p1);
      } catch (const std::exception& e) {
        rep.checks.push_back(Check::error("split[" + label("C_v", run.c_v) + "][r=" + cell(r) + "]",
                                          Stage::Main, e));
      }
    }
  }
  rep.tables.push_back(std::move(t));
  rep.checks.push_back(Check::at_most("max_p2_norm", p2_max, g3::kSplitP2Bound));
  rep.checks.push_back(Check::at_most("reconstruction_error", recon,
                                      cfg.tolerance("reconstruction", 1e-10)));
  std::sort(p1_at_probe.begin(), p1_at_probe.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  int violations = 0;
  for (std::size_t i = 1; i < p1_at_probe.size(); ++i)
    if (!(p1_at_probe[i].second < p1_at_probe[i - 1].second)) ++violations;
  if (p1_at_probe.size() < 2) violations = 1;
  rep.checks.push_back(Check::at_most("p1_monotone_in_c_v[" + label("r", probe) + "]", violations, 0.0));
}

//------------------------------------------------------------------------------
void lemma_run(const ScenarioConfig& cfg, RunReport& rep) {
  const auto radii = param_doubles(cfg.params, "sphere_radii", {3.0, 5.0, 10.0, 20.0, 40.0});
  const int rho_count = param_int(cfg.params, "rho_count", 6);
  const auto scaling = param_doubles(cfg.params, "scaling_radii", {5.0, 10.0, 20.0});
  const double scaling_rho = param_double(cfg.params, "scaling_rho", 2.0);
  const auto exterior = param_doubles(cfg.params, "exterior_radii", {3.0, 6.0, 12.0});
  if (rho_count < 1) throw ConfigError("rho_count must be positive");
  for (double r : radii)
    if (r <= 1.5) throw ConfigError("sphere_radii must exceed 1.5");
  for (double r : scaling)
    if (r <= 1.5 * scaling_rho || scaling_rho <= 1.0)
      throw ConfigError("scaling radii need 1 < scaling_rho <= 2 r / 3");
  for (double r : exterior)
    if (r <= 1.0) throw ConfigError("exterior_radii must exceed 1");

  DataTable sphere{"sphere",
                   {"x_norm", "rho", "measured_0", "measured_1", "measured_2", "bound_0", "bound_1",
                    "bound_2"},
                   {}};
  std::array<double, 3> worst{};
  try {
    for (double r : radii) {
      const double top = 2.0 * r / 3.0;
      for (int k = 1; k <= rho_count; ++k) {
        const double rho = 1.0 + (top - 1.0) * k / rho_count;
        const auto c = g3::sphere_bound_check(rho, g3::Vec3(0.0, 0.0, r));
        for (int w = 0; w < 3; ++w) worst[w] = std::max(worst[w], c.measured[w] / c.bound[w]);
        sphere.add({cell(r), cell(rho), cell(c.measured[0]), cell(c.measured[1]), cell(c.measured[2]),
                    cell(c.bound[0]), cell(c.bound[1]), cell(c.bound[2])});
      }
    }
    for (int w = 0; w < 3; ++w)
      rep.checks.push_back(Check::at_most("sphere_bound_ratio[" + cell(w) + "]", worst[w], 1.0));

    DataTable sc{"sphere_scaling", {"x_norm", "log_ratio", "relative_deviation"}, {}};
    double dev = 0.0;
    for (double r : scaling) {
      const auto near = g3::sphere_bound_check(scaling_rho, g3::Vec3(0.0, 0.0, r));
      const auto far = g3::sphere_bound_check(scaling_rho, g3::Vec3(0.0, 0.0, 2.0 * r));
      const double lr = std::log(far.measured[0] / near.measured[0]);
      const double d = std::abs(lr + r) / r;
      dev = std::max(dev, d);
      sc.add({cell(r), cell(lr), cell(d)});
    }
    rep.tables.push_back(std::move(sphere));
    rep.tables.push_back(std::move(sc));
    rep.checks.push_back(Check::at_most("sphere_log_ratio_deviation", dev, cfg.tolerance("scaling", 0.1)));
  } catch (const std::exception& e) {
    rep.checks.push_back(Check::error("sphere", Stage::Main, e));
  }

  try {
    DataTable ext{"exterior", {"x_norm", "measured", "bound", "rate_from_previous"}, {}};
    double ratio = 0.0, rate = std::numeric_limits<double>::infinity();
    double prev_r = 0.0, prev_m = 0.0;
    for (double r : exterior) {
      const auto c = g3::exterior_bound_check(g3::Vec3(0.0, r, 0.0));
      ratio = std::max(ratio, c.measured / c.bound);
      std::string slope;
      if (prev_r > 0.0) {
        const double s = std::log(prev_m / c.measured) / (r - prev_r);
        rate = std::min(rate, s);
        slope = cell(s);
      }
      ext.add({cell(r), cell(c.measured), cell(c.bound), slope});
      prev_r = r;
      prev_m = c.measured;
    }
    rep.tables.push_back(std::move(ext));
    rep.checks.push_back(Check::at_most("exterior_bound_ratio", ratio, 1.0));
    if (exterior.size() >= 2)
      rep.checks.push_back(Check::at_least("exterior_decay_rate", rate,
                                           g3::kExteriorRate - cfg.tolerance("rate", 0.02)));
  } catch (const std::exception& e) {
    rep.checks.push_back(Check::error("exterior", Stage::Main, e));
  }
}

void amplitude_run(const ScenarioConfig& cfg, RunReport& rep) {
  const double c_v = param_double(cfg.params, "c_v", 0.02);
  const double eps = param_double(cfg.params, "epsilon", 0.1);
  const double cut = param_double(cfg.params, "cut_radius", 1.0);
  const double c3 = param_double(cfg.params, "c3", 1.0), c4 = param_double(cfg.params, "c4", 2.0);
  const auto radii = param_doubles(cfg.params, "radii", {10.0, 20.0, 40.0});
  if (c_v < 0.0 || cut <= 0.0) throw ConfigError("amplitude needs c_v >= 0 and cut_radius > 0");
  if (c3 < 0.0 || c4 < 0.0) throw ConfigError("amplitude needs c3, c4 >= 0");
  std::vector<g3::Vec3> dirs;
  if (cfg.params.contains("directions")) {
    for (const auto& d : cfg.params.at("directions")) {
      if (!d.is_array() || d.size() != 3) throw ConfigError("directions must be 3-vectors");
      const g3::Vec3 v(d[0].get<double>(), d[1].get<double>(), d[2].get<double>());
      if (v.norm() == 0.0) throw ConfigError("directions must be non-zero");
      dirs.push_back(v / v.norm());
    }
  } else {
    dirs = {g3::Vec3::UnitX(), g3::Vec3::UnitZ()};
  }
  const auto v = cfg.potentials.empty()
                     ? pw::potentials3d::exterior(pw::potentials3d::power_decay(c_v, eps, false), cut)
                     : potential3d(cfg, Json::object());
  const auto f = g3::smooth_ball_source(c3, c4);

  g3::AmplitudeResult res;
  try {
    res = g3::amplitude_estimate(v, f, radii, dirs, born_options(cfg));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    rep.checks.push_back(Check::error("amplitude", Stage::Main, e));
    return;
  }
  DataTable t{"amplitude", {"radius", "dx", "dy", "dz", "amplitude_3", "amplitude_4", "raw_3", "raw_4"}, {}};
  std::array<double, 2> lowest{std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity()};
  for (const auto& s : res.samples) {
    t.add({cell(s.radius), cell(s.direction(0)), cell(s.direction(1)), cell(s.direction(2)),
           cell(s.amplitude[0]), cell(s.amplitude[1]), cell(s.raw[0]), cell(s.raw[1])});
    for (int j = 0; j < 2; ++j)
      if (res.source_l1[j] > 0.0)
        lowest[j] = std::min(lowest[j], s.amplitude[j] / (std::exp(-1.0) * res.source_l1[j]));
  }
  rep.tables.push_back(std::move(t));
  const double floor = 1.0 - cfg.tolerance("lower_bound", 0.1);
  rep.checks.push_back(Check::at_least("amplitude_over_bound[3]", lowest[0], floor));
  rep.checks.push_back(Check::at_least("amplitude_over_bound[4]", lowest[1], floor));
  rep.checks.push_back(Check::at_most("radial_spread", res.spread, cfg.tolerance("spread", 0.05)));
  rep.checks.push_back(Check::at_least("converged", res.converged ? 1.0 : 0.0, 1.0));
}

//------------------------------------------------------------------------------
using Runner = std::function<void(const ScenarioConfig&, RunReport&)>;

struct Entry {
  ScenarioInfo info;
  Runner run;
  Runner oracle;  // empty when none is registered
  std::function<void(const ScenarioConfig&)> validate;
};

void validate_matrix(const ScenarioConfig& cfg, const Json& fallback) {
  (void)matrix_potentials(cfg, fallback);
  (void)solver_options(cfg);
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    auto no_potential = [](const char* name) {
      return [name](const ScenarioConfig& cfg) {
        if (!cfg.potentials.empty())
          throw ConfigError(std::string(name) + " does not take a potential");
      };
    };
    e.push_back({{"wronskian-sweep", "Wronskian defect of the Jost data on a lambda sweep", true},
                 wronskian_run, jost_oracle,
                 [](const ScenarioConfig& c) { validate_matrix(c, kRandomFamily); }});
    e.push_back({{"conservation-sweep", "A*A - B*B - I on a lambda sweep and at a complex lambda", true},
                 conservation_run, jost_oracle,
                 [](const ScenarioConfig& c) { validate_matrix(c, kRandomFamily); }});
    e.push_back({{"density-oracle", "spectral density against the discretized resolvent", true},
                 [](const ScenarioConfig& c, RunReport& r) { density_run(c, r, false); },
                 [](const ScenarioConfig& c, RunReport& r) { density_run(c, r, true); },
                 [](const ScenarioConfig& c) { validate_matrix(c, kDensityPotentials); }});
    e.push_back({{"entropy-bound", "Szego interval bound and F2 asymptotics", false}, entropy_run, {},
                 [](const ScenarioConfig& c) { validate_matrix(c, kEntropyPotentials); }});
    e.push_back({{"szego-truncation", "entropy integrals over a truncation family", true}, szego_run,
                 szego_oracle, [](const ScenarioConfig& c) {
                   if (truncation_family(c) == "channel") {
                     (void)potential3d(c, kCoupledPotential);
                     (void)test_element(c);
                   } else {
                     validate_matrix(c, kSupportPotential);
                   }
                   (void)szego_truncations(c);
                 }});
    e.push_back({{"partialwave-measure", "channel decoupling, a_n norm and test-element measures", false},
                 partialwave_run, {}, [](const ScenarioConfig& c) {
                   (void)potential3d(c, kRadialPotential);
                   (void)test_element(c);
                 }});
    e.push_back({{"clifford", "Clifford and quaternion identities", false}, clifford_run, {},
                 no_potential("clifford")});
    e.push_back({{"free-green-residual", "finite-difference residual of the free Green function", false},
                 free_green_run, {}, no_potential("free-green-residual")});
    e.push_back({{"born-series", "Born series term ratios for G_i(x, 0)", false}, born_series_run, {},
                 [no_potential](const ScenarioConfig& c) {
                   no_potential("born-series")(c);
                   (void)born_radii(c, born_options(c).table_radius);
                   (void)born_direction(c);
                 }});
    e.push_back({{"asymptotic-split", "P1 and P2 of the Born sum", false}, asymptotic_split_run, {},
                 [no_potential](const ScenarioConfig& c) {
                   no_potential("asymptotic-split")(c);
                   (void)born_radii(c, born_options(c).table_radius);
                   (void)born_direction(c);
                 }});
    e.push_back({{"lemma-bounds", "sphere and exterior integral bounds", false}, lemma_run, {},
                 no_potential("lemma-bounds")});
    e.push_back({{"amplitude", "amplitude lower bound for a ball source", false}, amplitude_run, {},
                 [](const ScenarioConfig& c) {
                   if (!c.potentials.empty()) (void)potential3d(c, Json::object());
                   (void)born_options(c);
                 }});
    return e;
  }();
  return entries;
}

const Entry& lookup(const std::string& name) {
  for (const auto& e : registry())
    if (e.info.name == name) return e;
  throw ConfigError("unknown scenario '" + name + "'");
}

RunReport execute(const ScenarioConfig& cfg, const Runner& runner, const std::string& mode) {
  RunReport rep;
  rep.mode = mode;
  rep.config = cfg.echo();
  rep.version = tool_version();
  const auto start = std::chrono::steady_clock::now();
  try {
    runner(cfg, rep);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    rep.checks.push_back(Check::error("scenario", Stage::Main, e));
  }
  if (rep.checks.empty()) {
    Check c = Check::at_least("checks_present", 0.0, 1.0);
    c.diagnostic = "scenario produced no checks";
    rep.checks.push_back(c);
  }
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

std::vector<ScenarioInfo> scenario_registry() {
  std::vector<ScenarioInfo> out;
  for (const auto& e : registry()) out.push_back(e.info);
  return out;
}

void validate_scenario(const ScenarioConfig& cfg, bool oracle_mode) {
  const Entry& e = lookup(cfg.scenario);
  if (oracle_mode && !e.oracle)
    throw ConfigError("scenario '" + cfg.scenario + "' has no registered oracle");
  if (!(cfg.tol_scale > 0.0) || !std::isfinite(cfg.tol_scale))
    throw ConfigError("tol-scale must be positive");
  if (cfg.threads < 1) throw ConfigError("threads must be positive");
  try {
    e.validate(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& ex) {
    throw ConfigError(cfg.scenario + ": " + ex.what());
  }
}

RunReport run_scenario(const ScenarioConfig& cfg) {
  validate_scenario(cfg);
  return execute(cfg, lookup(cfg.scenario).run, "run");
}

RunReport compare_oracle(const ScenarioConfig& cfg) {
  validate_scenario(cfg, true);
  return execute(cfg, lookup(cfg.scenario).oracle, "oracle");
}

std::string tool_version() { return DIRACAC_VERSION; }

}  // namespace diracac::cli
