// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include "diracac/dirac1d.hpp"
#include "diracac/greens3d.hpp"
#include "diracac/linalg.hpp"
#include "diracac/oracles.hpp"
#include "diracac/partialwave.hpp"
#include "diracac/potential_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace diracac;
namespace pw = diracac::partialwave;
namespace g3 = diracac::greens3d;

namespace {

// Tolerances as stated by the acceptance criteria.
constexpr double kWronskianTol = 1e-6;
constexpr double kWronskianSeconds = 120.0;
constexpr double kConservationTol = 1e-6;
constexpr double kEigenFloor = -1e-6;
constexpr double kDensityTol = 1e-2;
constexpr double kDensitySeconds = 300.0;
constexpr double kAsymptoticScalarTol = 0.02;
constexpr double kAsymptoticMatrixTol = 0.05;
constexpr double kSzegoDrop = 0.5;
constexpr double kDecouplingTol = 1e-8;
constexpr double kChannelNormTol = 1e-6;
constexpr double kCliffordTol = 1e-13;
constexpr double kResidualTol = 1e-4;
constexpr double kBornRatio = 0.5;
constexpr double kBornSeconds = 900.0;
constexpr double kScalingTol = 0.1;
constexpr double kRateSlack = 0.02;
constexpr double kAmplitudeSlack = 0.1;

const Complex kI(0.0, 1.0);

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<MatrixPotential> random_family() {
  std::vector<MatrixPotential> out;
  for (int k = 0; k < 20; ++k) {
    const int m = 1 + k % 3;
    const auto seed = static_cast<std::uint64_t>(1000 + k);
    out.push_back(k % 2 == 0 ? random_step_potential(m, 2.0, seed)
                             : random_bump_potential(m, 2.0, seed));
  }
  return out;
}

std::vector<double> lambda_grid(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

//------------------------------------------------------------------------------
Outcome wronskian_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& pot : random_family()) {
    const int m = pot.size();
    for (double l : lambda_grid(-10.0, 10.0, 100)) {
      const CMatrix f = dirac1d::jost_at_zero(pot, l);
      worst = std::max(worst, dirac1d::wronskian_defect(f.topRows(m), f.bottomRows(m)).norm());
    }
  }
  const double t = seconds_since(t0);
  return {worst < kWronskianTol && t < kWronskianSeconds,
          fmt("max defect %.3g (< %.0e), %.1f s", worst, kWronskianTol, t)};
}

Outcome conservation_law() {
  double worst = 0.0, lowest = 1e300;
  for (const auto& pot : random_family()) {
    const int m = pot.size();
    const CMatrix id = CMatrix::Identity(m, m);
    for (double l : lambda_grid(-10.0, 10.0, 100)) {
      const CMatrix f = dirac1d::jost_at_zero(pot, l);
      const auto sp = dirac1d::scattering_coefficients(l, f.topRows(m), f.bottomRows(m));
      worst = std::max(worst, (sp.A.adjoint() * sp.A - sp.B.adjoint() * sp.B - id).norm());
    }
    const Complex z(1.0, 1.0);
    const CMatrix f = dirac1d::jost_at_zero(pot, z);
    const auto sp = dirac1d::scattering_coefficients(z, f.topRows(m), f.bottomRows(m));
    lowest = std::min(lowest, linalg::min_eigenvalue(sp.A.adjoint() * sp.A - sp.B.adjoint() * sp.B - id));
  }
  return {worst < kConservationTol && lowest >= kEigenFloor,
          fmt("max ||A*A - B*B - I|| %.3g (< %.0e), min eig at 1+i %.3g", worst, kConservationTol,
              lowest)};
}

Outcome density_factorization() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<MatrixPotential> pots{
      MatrixPotential::scalar(profiles::step(0.0, 1.0), 0.0, 0.5),
      MatrixPotential::scalar(profiles::bump(0.2, 1.2), 0.3, 0.8)};
  double worst = 0.0;
  for (const auto& pot : pots)
    for (double l : lambda_grid(-4.0, 4.0, 33))
      worst = std::max(worst, (dirac1d::density_at(pot, l) - oracles::resolvent_density(pot, l)).norm());
  const double t = seconds_since(t0);
  return {worst < kDensityTol && t < kDensitySeconds,
          fmt("sup discrepancy %.3g (< %.0e), %.1f s", worst, kDensityTol, t)};
}

Outcome f2_asymptotics() {
  const auto scalar = MatrixPotential::scalar(profiles::bump(0.2, 1.2), 0.0, 0.8);
  const double e1 = dirac1d::f2_asymptotic_check(scalar, 200.0).relative_error;
  CMatrix a(2, 2), b(2, 2);
  a << 0.3, Complex(0.0, 0.2), Complex(0.0, -0.2), -0.1;
  b << 0.5, 0.1, 0.1, 0.4;
  const auto matrix = MatrixPotential::from_terms(2, {{profiles::bump(0.1, 1.1), a, b}});
  const double e2 = dirac1d::f2_asymptotic_check(matrix, 400.0).relative_error;
  return {e1 < kAsymptoticScalarTol && e2 < kAsymptoticMatrixTol,
          fmt("relative error m=1 at y=200: %.3g (< %.2f), m=2 at y=400: %.3g", e1,
              kAsymptoticScalarTol, e2) +
              fmt(" (< %.2f)", kAsymptoticMatrixTol)};
}

Outcome szego_shape() {
  const auto pot = MatrixPotential::scalar(profiles::power_decay(1.0, 16.0), 0.0, 1.0);
  const CVector e1 = CVector::Unit(1, 0);
  std::vector<double> values;
  for (int n : {2, 4, 8, 16})
    values.push_back(dirac1d::szego_interval_bound(pot.truncated(n), e1, {-5.0, 5.0}).lhs);
  const double floor = values.back() - kSzegoDrop;
  const double lowest = *std::min_element(values.begin(), values.end());
  return {lowest >= floor, fmt("min over n %.4g, floor (n=16 value - 0.5) %.4g", lowest, floor)};
}

Outcome partial_wave_reduction() {
  const auto v = pw::potentials3d::power_decay(0.5, 0.1, true);
  const auto full = pw::build_system(v, 8, RadialGrid::uniform(60.0, 0.05));
  double off = 0.0;
  for (const auto& b : full.b)
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (i != j) off = std::max(off, std::abs(b(i, j)));
  const auto lambdas = lambda_grid(-4.0, 4.0, 17);
  const auto test = pw::bump_test_element();
  const auto ref = pw::test_element_measure(test, full, 1, lambdas);
  double spread = 0.0, scale = 0.0;
  for (double x : ref.mu_prime) scale = std::max(scale, x);
  for (int n : {2, 4, 8}) {
    const auto mu = pw::test_element_measure(test, full, n, lambdas);
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      spread = std::max(spread, std::abs(mu.mu_prime[i] - ref.mu_prime[i]) / scale);
  }
  const double a_dev = std::abs(pw::a_channel_l2(full, 0) - 1.0);
  return {off < kDecouplingTol && spread < kDecouplingTol && a_dev < kChannelNormTol,
          fmt("off-diagonal b %.3g, mu' spread over n %.3g (< 1e-8), |int ||a e1||^2 - 1| %.3g", off,
              spread, a_dev)};
}

Outcome clifford_identities() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    g3::Vec3 g(nd(rng), nd(rng), nd(rng));
    for (double d : g3::clifford_identity_defects(g / g.norm())) worst = std::max(worst, d);
  }
  const double q = g3::quaternion_defect();
  return {worst < kCliffordTol && q == 0.0,
          fmt("max defect %.3g (< 1e-13), quaternion defect %.3g (exact)", worst, q)};
}

Outcome free_green_residual() {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> dist(0.5, 20.0), box(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    g3::Vec3 u(nd(rng), nd(rng), nd(rng));
    const g3::Vec3 s(box(rng), box(rng), box(rng));
    const g3::Vec3 x = s + dist(rng) * u / u.norm();
    worst = std::max(worst, g3::free_green_residual(kI, x, s));
  }
  return {worst < kResidualTol, fmt("max residual %.3g (< 1e-4)", worst)};
}

Outcome born_series() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> radii{5.0, 10.0, 20.0, 50.0};
  double ratio_002 = 0.0, p2_max = 0.0;
  std::vector<double> p1_at_20;
  for (double c_v : {0.04, 0.02, 0.01}) {
    const g3::BornSeries series(pw::potentials3d::power_decay(c_v, 0.1, false), g3::free_field());
    for (double r : radii) {
      const g3::Vec3 x(0.0, 0.0, r);
      auto res = g3::born_evaluate(series, x, g3::BornOptions{}.tol);
      res.green.value += g3::free_green(kI, x, g3::Vec3::Zero()).value - res.terms.front().value;
      if (c_v == 0.02)
        for (double q : res.ratios) ratio_002 = std::max(ratio_002, q);
      const auto split = g3::asymptotic_split(res.green);
      p2_max = std::max(p2_max, split.p2.norm());
      if (r == 20.0) p1_at_20.push_back((split.p1 - g3::Matrix4::Identity()).norm());
    }
  }
  const bool monotone = p1_at_20[1] < p1_at_20[0] && p1_at_20[2] < p1_at_20[1];
  const double t = seconds_since(t0);
  return {ratio_002 < kBornRatio && monotone && p2_max <= g3::kSplitP2Bound && t < kBornSeconds,
          fmt("max ratio at C_v=0.02 %.3g (< 0.5), ||P1-1|| at 20: %.3g", ratio_002, p1_at_20[0]) +
              fmt(" > %.3g > %.3g", p1_at_20[1], p1_at_20[2]) +
              fmt(", max ||P2|| %.3g (<= %.2f), %.0f s", p2_max, g3::kSplitP2Bound, t)};
}

Outcome lemma_bounds() {
  double worst = 0.0;  // largest measured / bound
  for (double r : {3.0, 5.0, 10.0, 20.0, 40.0})
    for (int k = 1; k <= 6; ++k) {
      const auto c = g3::sphere_bound_check(1.0 + (2.0 * r / 3.0 - 1.0) * k / 6.0,
                                            g3::Vec3(0.0, 0.0, r));
      for (int w = 0; w < 3; ++w) worst = std::max(worst, c.measured[w] / c.bound[w]);
    }
  double dev = 0.0;
  for (double r : {5.0, 10.0, 20.0}) {
    const double near = g3::sphere_bound_check(2.0, g3::Vec3(0.0, 0.0, r)).measured[0];
    const double far = g3::sphere_bound_check(2.0, g3::Vec3(0.0, 0.0, 2.0 * r)).measured[0];
    dev = std::max(dev, std::abs(std::log(far / near) + r) / r);
  }
  double rate = 1e300, prev_r = 0.0, prev_m = 0.0;
  for (double r : {3.0, 6.0, 12.0}) {
    const auto c = g3::exterior_bound_check(g3::Vec3(0.0, r, 0.0));
    worst = std::max(worst, c.measured / c.bound);
    if (prev_r > 0.0) rate = std::min(rate, std::log(prev_m / c.measured) / (r - prev_r));
    prev_r = r;
    prev_m = c.measured;
  }
  return {worst <= 1.0 && dev <= kScalingTol && rate >= g3::kExteriorRate - kRateSlack,
          fmt("max measured/bound %.3g (<= 1), log-ratio deviation %.3g (<= 0.1), exterior rate %.4g",
              worst, dev, rate) +
              fmt(" (>= %.4g)", g3::kExteriorRate - kRateSlack)};
}

Outcome amplitude_lower_bound() {
  const auto v = pw::potentials3d::exterior(pw::potentials3d::power_decay(0.02, 0.1, false), 1.0);
  const auto f = g3::smooth_ball_source(1.0, 2.0);
  const auto res = g3::amplitude_estimate(v, f, {10.0, 20.0, 40.0},
                                          {g3::Vec3::UnitX(), g3::Vec3::UnitZ()});
  double lowest = 1e300;
  for (const auto& s : res.samples)
    for (int j = 0; j < 2; ++j)
      lowest = std::min(lowest, s.amplitude[j] / (std::exp(-1.0) * res.source_l1[j]));
  return {lowest >= 1.0 - kAmplitudeSlack && res.converged,
          fmt("min amplitude / (e^-1 int|f_j|) %.4g (>= %.2f), spread %.3g", lowest,
              1.0 - kAmplitudeSlack, res.spread)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Wronskian identity", wronskian_identity},
      {"conservation law", conservation_law},
      {"factorization vs resolvent oracle", density_factorization},
      {"F2 asymptotics", f2_asymptotics},
      {"Szego bound shape", szego_shape},
      {"partial-wave reduction", partial_wave_reduction},
      {"Clifford identities", clifford_identities},
      {"free Green residual", free_green_residual},
      {"Born series", born_series},
      {"lemma bounds", lemma_bounds},
      {"amplitude lower bound", amplitude_lower_bound},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
