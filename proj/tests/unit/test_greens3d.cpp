#include "diracac/greens3d.hpp"
#include "diracac/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace diracac;
using namespace diracac::greens3d;

namespace {

const Complex kI(0.0, 1.0);

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  return v / v.norm();
}

ScalarPotential3D born_potential(double c_v) {
  return partialwave::potentials3d::power_decay(c_v, 0.1, false);
}

// Series shared across test cases; each costs a few seconds.
const BornSeries& series_for(double c_v) {
  static std::map<double, BornSeries> cache;
  auto it = cache.find(c_v);
  if (it == cache.end()) it = cache.emplace(c_v, BornSeries(born_potential(c_v), free_field())).first;
  return it->second;
}

BornResult born_at(double c_v, const Vec3& x) {
  BornResult out = born_evaluate(series_for(c_v), x, BornOptions{}.tol);
  out.green.value += free_green(kI, x, Vec3::Zero()).value - out.terms.front().value;
  return out;
}

// -integral of G0(x - s) beta v(s) G0(s) ds with spherical coordinates about
// 0 on the half-space nearer to 0 and about x on the other half.
Matrix4 first_born_term_oracle(const std::function<double(double)>& v, const Vec3& x) {
  const double r = x.norm();
  const Vec3 xhat = x / r;
  const Vec3 e1 = xhat.unitOrthogonal(), e2 = xhat.cross(e1);
  Matrix4 total = Matrix4::Zero();
  const int nphi = 8;
  for (int side = 0; side < 2; ++side) {
    const Vec3 centre = side == 0 ? Vec3::Zero() : x;
    const double dir = side == 0 ? 1.0 : -1.0;  // toward the bisecting plane
    for (const auto& [ca, cb] : {std::pair{-1.0, 0.0}, std::pair{0.0, 1.0}}) {
      const auto ct = quad::gauss_legendre(48, ca, cb);
      for (std::size_t i = 0; i < ct.nodes.size(); ++i) {
        const double c = ct.nodes[i], sn = std::sqrt(1.0 - c * c);
        const double towards = dir * c;
        const double rmax = towards > 0.0 ? std::min(40.0, r / (2.0 * towards)) : 40.0;
        const int panels = std::max(1, static_cast<int>(std::ceil(rmax)));
        for (int p = 0; p < panels; ++p) {
          const auto rr = quad::gauss_legendre(16, rmax * p / panels, rmax * (p + 1) / panels);
          for (std::size_t k = 0; k < rr.nodes.size(); ++k) {
            const double q = rr.nodes[k];
            for (int f = 0; f < nphi; ++f) {
              const double ph = 2.0 * kPi * (f + 0.5) / nphi;
              const Vec3 w = c * xhat + sn * (std::cos(ph) * e1 + std::sin(ph) * e2);
              const Vec3 s = centre + q * w;
              const double wt = ct.weights[i] * rr.weights[k] * q * q * 2.0 * kPi / nphi;
              total -= wt * free_green(kI, x, s).value * beta() * v(s.norm()) *
                       free_green(kI, s, Vec3::Zero()).value;
            }
          }
        }
      }
    }
  }
  return total;
}

}  // namespace

//------------------------------------------------------------------------------
TEST_CASE("alpha_dot: assembly, square and zero vector") {
  const Matrix4 a3 = alpha_dot(Vec3::UnitZ());
  CHECK((a3.topRightCorner<2, 2>() - pauli(3)).norm() == 0.0);
  CHECK((a3.bottomLeftCorner<2, 2>() - pauli(3)).norm() == 0.0);
  CHECK(a3.topLeftCorner<2, 2>().norm() == 0.0);
  CHECK(a3.bottomRightCorner<2, 2>().norm() == 0.0);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Matrix4 a = alpha_dot(random_unit(rng));
    CHECK((a * a - Matrix4::Identity()).norm() < 1e-15 * 4);
  }
  CHECK(alpha_dot(Vec3::Zero()).norm() == 0.0);
}

TEST_CASE("Clifford identities hold on axes and random unit vectors") {
  for (const Vec3& g : {Vec3(Vec3::UnitZ()), Vec3(Vec3::UnitX())}) {
    const auto d = clifford_identity_defects(g);
    for (double x : d) CHECK(x < 1e-15);
  }
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i)
    for (double x : clifford_identity_defects(random_unit(rng))) worst = std::max(worst, x);
  CHECK(worst < 1e-13);
  CHECK_THROWS_AS(clifford_identity_defects(Vec3(1.0, 1.0, 0.0)), InvalidArgument);
}

TEST_CASE("anticommutators and quaternion units are exact") {
  CHECK(anticommutator_defect() == 0.0);
  CHECK(quaternion_defect() == 0.0);
  const auto q = quaternion_units();
  CHECK((q.i * q.j - q.k).norm() == 0.0);
  CHECK((q.i * q.i + Matrix2::Identity()).norm() == 0.0);
}

//------------------------------------------------------------------------------
TEST_CASE("free_green: closed form at lambda = i along e3") {
  const auto g = free_green(kI, Vec3::UnitZ(), Vec3::Zero());
  const Matrix4 expected =
      kI * (2.0 * alpha(3) + Matrix4::Identity()) * (std::exp(-1.0) / (4.0 * kPi));
  CHECK((g.value - expected).norm() < 1e-16);
  CHECK_THROWS_AS(free_green(kI, Vec3::UnitX(), Vec3::UnitX()), SingularParameter);
  CHECK_THROWS_AS(free_green(Complex(1.0, -0.5), Vec3::UnitX(), Vec3::Zero()), InvalidArgument);
}

TEST_CASE("free_green: finite-difference Dirac residual vanishes") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dist(0.5, 20.0), box(-3.0, 3.0);
  double worst = 0.0, worst_rel = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Vec3 s(box(rng), box(rng), box(rng));
    const Vec3 x = s + dist(rng) * random_unit(rng);
    for (Complex lambda : {kI, Complex(0.7, 0.4), Complex(2.0, 1.0)}) {
      const double res = free_green_residual(lambda, x, s);
      worst = std::max(worst, res);
      worst_rel = std::max(worst_rel, res / free_green(lambda, x, s).value.norm());
    }
  }
  CHECK(worst < 1e-4);
  CHECK(worst_rel < 1e-6);
}

TEST_CASE("free_green: exp(-t) / t decay at lambda = i") {
  auto q = [](double t) {
    return free_green(kI, Vec3(0.0, 0.0, t), Vec3::Zero()).value.norm() * t * std::exp(t);
  };
  CHECK(std::abs(q(10.0) / q(5.0) - 1.0) < 0.05);
  CHECK(std::abs(q(20.0) / q(10.0) - 1.0) < 0.05);
}

//------------------------------------------------------------------------------
TEST_CASE("born_iterate: v = 0 returns the free kernel as a single term") {
  const Vec3 x(1.0, -2.0, 4.0);
  const auto res = born_iterate(partialwave::potentials3d::zero(), x);
  CHECK(res.terms.size() == 1);
  CHECK(res.converged);
  CHECK((res.green.value - free_green(kI, x, Vec3::Zero()).value).norm() == 0.0);
}

TEST_CASE("born_iterate: requires a radial potential") {
  CHECK_THROWS_AS(born_iterate(partialwave::potentials3d::angular_modulated(0.02, 0.6),
                               Vec3(0.0, 0.0, 5.0)),
                  InvalidArgument);
}

TEST_CASE("born tables: first term matches direct 3D quadrature") {
  const auto& series = series_for(0.02);
  const auto profile = born_potential(0.02).profile;
  for (const Vec3& x : {Vec3(0.0, 0.0, 5.0), Vec3(1.0, 2.0, -2.0)}) {
    const Matrix4 table = assemble(series.term(1)(x.norm()), x);
    const Matrix4 oracle = first_born_term_oracle(profile, x);
    CHECK((table - oracle).norm() / oracle.norm() < 1e-5);
  }
}

TEST_CASE("born_iterate: geometric decay with ratios below 0.5 at C_v = 0.02") {
  for (double r : {5.0, 10.0, 20.0, 50.0}) {
    const auto res = born_at(0.02, Vec3(0.0, r, 0.0));
    CHECK(res.converged);
    REQUIRE(res.ratios.size() >= 2);
    for (double q : res.ratios) CHECK(q < 0.5);
  }
  // The leading ratio scales with C_v.
  const auto half = born_at(0.01, Vec3(0.0, 0.0, 10.0));
  const auto full = born_at(0.02, Vec3(0.0, 0.0, 10.0));
  CHECK(half.ratios[0] / full.ratios[0] == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("born_iterate: converged partial sums agree with longer series") {
  const Vec3 x(0.0, 0.0, 5.0);
  const auto res = born_at(0.02, x);
  REQUIRE(res.converged);
  const auto& last = res.terms.back();
  CHECK(last.scaled_norm <= series_for(0.02).sup_norms().back() * (1.0 + 1e-9));
  BornOptions shorter;
  shorter.max_terms = 3;
  const auto truncated = born_evaluate(BornSeries(born_potential(0.02), free_field(), shorter),
                                       x, shorter.tol);
  double dropped = 0.0;
  for (std::size_t n = truncated.terms.size(); n < res.terms.size(); ++n)
    dropped += res.terms[n].value.norm();
  const double diff = (res.green.value - free_green(kI, x, Vec3::Zero()).value +
                       truncated.terms.front().value - truncated.green.value)
                          .norm();
  CHECK(diff <= dropped * (1.0 + 1e-6) + 1e-18);
}

TEST_CASE("born_iterate: a large C_v is rejected") {
  BornOptions opts;
  opts.max_terms = 8;
  opts.table_radius = 40.0;
  CHECK_THROWS_AS(BornSeries(born_potential(3.0), free_field(), opts), SmallnessViolated);
}

//------------------------------------------------------------------------------
TEST_CASE("asymptotic_split: free kernel gives P1 = 1 and a decaying P2") {
  double prev = 1e300;
  for (double r : {2.0, 5.0, 20.0, 80.0}) {
    const Vec3 x = r * Vec3(1.0, 2.0, 2.0) / 3.0;
    const auto g = free_green(kI, x, Vec3::Zero());
    const auto s = asymptotic_split(g);
    CHECK((s.p1 - Matrix4::Identity()).norm() < 1e-14);
    const Matrix4 p2 = kI * alpha_dot(x / r) * std::sqrt(r + 1.0) / r;
    CHECK((s.p2 - p2).norm() < 1e-13);
    CHECK(s.p2.norm() < prev);
    prev = s.p2.norm();
    CHECK((reconstruct(s) - g.value).norm() / g.value.norm() < 1e-10);
  }
}

TEST_CASE("asymptotic_split: regime and parameter checks") {
  CHECK_THROWS_AS(asymptotic_split(free_green(kI, Vec3(0.0, 0.0, 1.5), Vec3::Zero())),
                  OutOfRegime);
  CHECK_THROWS_AS(asymptotic_split(free_green(Complex(0.0, 2.0), Vec3(0.0, 0.0, 5.0),
                                              Vec3::Zero())),
                  InvalidArgument);
  CHECK_THROWS_AS(asymptotic_split(free_green(kI, Vec3(0.0, 0.0, 5.0), Vec3::UnitX())),
                  InvalidArgument);
}

TEST_CASE("asymptotic_split: Born sum keeps P2 bounded and P1 near 1") {
  std::vector<double> deltas;
  for (double c_v : {0.02, 0.01}) {
    for (double r : {5.0, 10.0, 20.0, 50.0}) {
      const auto res = born_at(c_v, Vec3(r, 0.0, 0.0));
      const auto s = asymptotic_split(res.green);
      CHECK(s.p2.norm() < kSplitP2Bound);
      CHECK((reconstruct(s) - res.green.value).norm() / res.green.value.norm() < 1e-10);
      if (r == 20.0) deltas.push_back((s.p1 - Matrix4::Identity()).norm());
    }
  }
  CHECK(deltas[1] < deltas[0]);
  CHECK(deltas[0] < 0.05);
}

TEST_CASE("term splits add up to the split of the sum") {
  const Vec3 x(0.0, 3.0, 4.0);
  const auto res = born_at(0.02, x);
  const auto total = asymptotic_split(res.green);
  Matrix4 p1 = asymptotic_split(free_green(kI, x, Vec3::Zero())).p1;
  for (std::size_t n = 1; n < res.terms.size(); ++n) p1 += res.terms[n].split.p1;
  CHECK((p1 - total.p1).norm() < 1e-12);
}

//------------------------------------------------------------------------------
TEST_CASE("sphere_bound_check: closed form, doubled order and frozen bound") {
  const double rho = 2.0, r = 10.0;
  const auto c = sphere_bound_check(rho, Vec3(0.0, 0.0, r));
  // 2 pi rho / r * e^-rho * integral of t e^-t over [r - rho, r + rho].
  auto te = [](double t) { return -(t + 1.0) * std::exp(-t); };
  const double exact = 2.0 * kPi * rho / r * std::exp(-rho) * (te(r + rho) - te(r - rho));
  CHECK(c.measured[0] == doctest::Approx(exact).epsilon(1e-10));
  CHECK(c.holds());
  for (double m : c.measured) CHECK(std::isfinite(m / std::exp(-r)));
}

TEST_CASE("sphere_bound_check: continuity near rho = 1 and e^-|x| scaling") {
  const auto a = sphere_bound_check(1.001, Vec3(0.0, 0.0, 8.0));
  const auto b = sphere_bound_check(1.0011, Vec3(0.0, 0.0, 8.0));
  for (int k = 0; k < 3; ++k) CHECK(std::abs(a.measured[k] - b.measured[k]) / a.measured[k] < 1e-3);

  for (double r : {5.0, 10.0, 20.0}) {
    const auto near = sphere_bound_check(2.0, Vec3(0.0, 0.0, r));
    const auto far = sphere_bound_check(2.0, Vec3(0.0, 0.0, 2.0 * r));
    const double log_ratio = std::log(far.measured[0] / near.measured[0]);
    CHECK(std::abs(log_ratio + r) < 0.1 * r);
    CHECK(near.holds());
    CHECK(far.holds());
  }
  CHECK_THROWS_AS(sphere_bound_check(0.5, Vec3(0.0, 0.0, 5.0)), InvalidArgument);
  CHECK_THROWS_AS(sphere_bound_check(4.0, Vec3(0.0, 0.0, 5.0)), InvalidArgument);
}

TEST_CASE("exterior_bound_check: frozen bound, decay rate and positivity") {
  const auto six = exterior_bound_check(Vec3(0.0, 6.0, 0.0));
  const auto three = exterior_bound_check(Vec3(0.0, 3.0, 0.0));
  CHECK(six.holds());
  CHECK(three.holds());
  CHECK(six.measured > 0.0);
  CHECK(std::log(three.measured / six.measured) >= kExteriorRate * 3.0 - 0.2);

  // Inner w integral in closed form as an oracle.
  const double r = 6.0, u0 = 4.0 * r / 3.0;
  const double oracle = quad::integrate(
                            [&](double u) {
                              const double lo = std::max(-r, u0 - u), hi = std::min(r, u - u0);
                              if (hi <= lo) return 0.0;
                              auto prim = [&](double w) { return u * u * w - w * w * w / 3.0; };
                              return std::exp(-u) * (prim(hi) - prim(lo));
                            },
                            u0, u0 + 70.0, 140, 16) *
                        kPi / (4.0 * r);
  CHECK(six.measured == doctest::Approx(oracle).epsilon(1e-8));
  CHECK_THROWS_AS(exterior_bound_check(Vec3(0.0, 0.0, 0.5)), InvalidArgument);
}

//------------------------------------------------------------------------------
TEST_CASE("amplitude_estimate: free case equals the exponential moment") {
  const auto f = smooth_ball_source(1.0, 0.5);
  // Direct quadrature of integral exp(<xhat, s>) g(|s|) ds in (rho, cos theta).
  const double direct = 2.0 * kPi * quad::integrate(
                                         [&](double rho) {
                                           return quad::integrate(
                                               [&](double c) {
                                                 return std::exp(rho * c) * f.g(rho) * rho * rho;
                                               },
                                               -1.0, 1.0, 2, 16);
                                         },
                                         0.0, 1.0, 8, 16);
  const auto mom = f.exponential_moments();
  CHECK(mom[0] == doctest::Approx(direct).epsilon(1e-12));
  CHECK(mom[1] == doctest::Approx(0.5 * direct).epsilon(1e-12));

  std::mt19937_64 rng(5);
  const auto res = amplitude_estimate(partialwave::potentials3d::zero(), f, {10.0, 20.0},
                                      {Vec3::UnitZ(), random_unit(rng)});
  REQUIRE(res.samples.size() == 4);
  for (const auto& s : res.samples) {
    CHECK(s.amplitude[0] == doctest::Approx(mom[0]).epsilon(1e-6));
    CHECK(s.amplitude[1] == doctest::Approx(mom[1]).epsilon(1e-6));
    CHECK(s.raw[0] == doctest::Approx(mom[0] / (4.0 * kPi * std::exp(1.0))).epsilon(1e-6));
  }
  CHECK(res.spread < 1e-9);
}

TEST_CASE("amplitude_estimate: lower bound and stabilization for small C_v") {
  const auto v = partialwave::potentials3d::exterior(born_potential(0.02), 1.0);
  const auto f = smooth_ball_source(1.0, 2.0);
  const auto res = amplitude_estimate(v, f, {10.0, 20.0, 40.0}, {Vec3::UnitX(), Vec3::UnitZ()});
  CHECK(res.converged);
  CHECK(res.spread < 0.05);
  for (const auto& s : res.samples)
    for (int j = 0; j < 2; ++j)
      CHECK(s.amplitude[j] >= std::exp(-1.0) * (1.0 - 0.1) * res.source_l1[j]);
  CHECK_THROWS_AS(amplitude_estimate(v, smooth_ball_source(-1.0, 1.0), {10.0}, {Vec3::UnitZ()}),
                  InvalidArgument);
}
