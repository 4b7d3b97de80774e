#include "diracac/dirac1d.hpp"
#include "diracac/linalg.hpp"
#include "diracac/oracles.hpp"
#include "diracac/potential_io.hpp"

#include <doctest.h>

#include <cmath>

using namespace diracac;
using namespace diracac::dirac1d;

namespace {

MatrixPotential step_half() {
  return MatrixPotential::scalar(profiles::step(0.0, 1.0), 0.0, 0.5);
}

CMatrix stacked(const CMatrix& top, const CMatrix& bottom) {
  CMatrix y(top.rows() + bottom.rows(), top.cols());
  y << top, bottom;
  return y;
}

}  // namespace

TEST_CASE("solve_regular: free case gives cos and -sin") {
  const auto grid = RadialGrid::uniform(5.0, 0.01);
  const auto sol = solve_regular(MatrixPotential::free(2), 1.0, grid);
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    err = std::max(err, (sol.phi[i] - std::cos(r) * CMatrix::Identity(2, 2)).norm());
    err = std::max(err, (sol.psi[i] + std::sin(r) * CMatrix::Identity(2, 2)).norm());
  }
  CHECK(err < 1e-8);
}

TEST_CASE("solve_regular: initial conditions are exact") {
  const auto pot = random_step_potential(2, 1.0, 3);
  const auto sol = solve_regular(pot, 0.0, RadialGrid::uniform(1.0, 0.1));
  CHECK(sol.phi[0] == CMatrix::Identity(2, 2));
  CHECK(sol.psi[0] == CMatrix::Zero(2, 2));
}

TEST_CASE("solve_regular: constant b0 on [0,1] matches the matrix exponential") {
  const double b0 = 0.7;
  const auto pot = MatrixPotential::scalar(profiles::step(0.0, 1.0), 0.0, b0);
  const auto sol = solve_regular(pot, 2.0, RadialGrid::uniform(1.0, 0.01));
  const CMatrix g = oracles::constant_generator(CMatrix::Zero(1, 1),
                                                CMatrix::Constant(1, 1, b0), 2.0);
  const CMatrix expected = oracles::expm(g) * stacked(CMatrix::Identity(1, 1),
                                                      CMatrix::Zero(1, 1));
  CHECK((stacked(sol.phi.back(), sol.psi.back()) - expected).norm() < 1e-8);
}

TEST_CASE("solve_regular: grid must cover the support") {
  CHECK_THROWS_AS(solve_regular(step_half(), 1.0, RadialGrid::uniform(0.5, 0.1)),
                  InvalidArgument);
}

TEST_CASE("solve_jost: free case gives plane waves") {
  const auto grid = RadialGrid::uniform(4.0, 0.05);
  const auto sol = solve_jost(MatrixPotential::free(1), 1.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex e = std::exp(1i * grid.node(i));
    CHECK(std::abs(sol.f1_full[i](0, 0) + 1i * e) < 1e-14);
    CHECK(std::abs(sol.f2_full[i](0, 0) - e) < 1e-14);
  }
}

TEST_CASE("solve_jost: reduced data is the plane-wave constant beyond the support") {
  const auto pot = random_step_potential(2, 1.0, 11);
  const auto grid = RadialGrid::uniform(3.0, 0.01);
  for (Complex lambda : {Complex(1.3), Complex(0.5, 2.0)}) {
    const auto sol = solve_jost(pot, lambda, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid.node(i) < 1.0) continue;
      CHECK((sol.f1_red[i] + 1i * CMatrix::Identity(2, 2)).norm() < 1e-12);
      CHECK((sol.f2_red[i] - CMatrix::Identity(2, 2)).norm() < 1e-12);
    }
  }
}

TEST_CASE("solve_jost: backward matrix exponential oracle for b0 = 0.5, lambda = 3") {
  const Complex lambda = 3.0;
  const CMatrix g = oracles::constant_generator(CMatrix::Zero(1, 1),
                                                CMatrix::Constant(1, 1, 0.5), lambda);
  const Complex e = std::exp(1i * lambda);
  CMatrix terminal(2, 1);
  terminal << -1i * e, e;
  const CMatrix expected = oracles::expm(-g) * terminal;
  for (JostRoute route : {JostRoute::Picard, JostRoute::Ode}) {
    SolverOptions opts;
    opts.route = route;
    const auto sol = solve_jost(step_half(), lambda, opts);
    CHECK(std::abs(sol.f1_full[0](0, 0) - expected(0, 0)) < 1e-6);
    CHECK(std::abs(sol.f2_full[0](0, 0) - expected(1, 0)) < 1e-6);
  }
}

TEST_CASE("solve_jost: route selection follows |Im lambda|") {
  const auto pot = step_half();
  CHECK(solve_jost(pot, Complex(2.0, 0.5)).route == JostRoute::Picard);
  CHECK(solve_jost(pot, Complex(2.0, 1.5)).route == JostRoute::Ode);
  CHECK(solve_jost(pot, Complex(2.0, 0.5)).iterations > 0);
}

TEST_CASE("solve_jost: Picard and ODE routes agree on a matrix potential") {
  const auto pot = random_bump_potential(3, 2.0, 5, 1.5);
  for (Complex lambda : {Complex(-4.0), Complex(0.0), Complex(2.5, 0.7)}) {
    SolverOptions p, o;
    p.route = JostRoute::Picard;
    o.route = JostRoute::Ode;
    const CMatrix fp = jost_at_zero(pot, lambda, p);
    const CMatrix fo = jost_at_zero(pot, lambda, o);
    CHECK((fp - fo).norm() < 1e-6);
  }
}

TEST_CASE("solve_jost: non-convergence error carries the residual") {
  SolverOptions opts;
  opts.route = JostRoute::Picard;
  opts.picard_max_iter = 2;
  const auto pot = random_step_potential(2, 3.0, 1, 2.0);
  try {
    (void)solve_jost(pot, 1.0, opts);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.residual() > opts.picard_tol);
  }
  CHECK_THROWS_AS(solve_jost(pot, Complex(1.0, -1.0)), InvalidArgument);
}

TEST_CASE("scattering coefficients: free case and conservation") {
  const auto free = scattering_coefficients(solve_jost(MatrixPotential::free(2), 0.8));
  CHECK((free.A - CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK(free.B.norm() < 1e-14);
  const auto pot = random_step_potential(3, 2.0, 21);
  for (double lambda : {-7.5, -1.0, 0.0, 0.3, 9.9}) {
    const auto sp = scattering_coefficients(solve_jost(pot, lambda));
    const CMatrix d = sp.A.adjoint() * sp.A - sp.B.adjoint() * sp.B -
                      CMatrix::Identity(3, 3);
    CHECK(d.norm() < 1e-6);
  }
  const auto sp = scattering_coefficients(solve_jost(pot, Complex(1.0, 1.0)));
  const CMatrix d = sp.A.adjoint() * sp.A - sp.B.adjoint() * sp.B - CMatrix::Identity(3, 3);
  CHECK(linalg::min_eigenvalue(d) >= -1e-6);
}

TEST_CASE("scattering coefficients: A(iy) asymptotics for m = 1") {
  const auto pot = MatrixPotential::scalar(profiles::step(0.0, 1.0), 0.3, 0.5);
  const double y = 100.0 * (1.0 + pot.sup_norm());
  const auto sp = scattering_coefficients(solve_jost(pot, Complex(0.0, y)));
  const Complex lambda(0.0, y);
  const Complex predicted =
      -pot.abs_g_squared_integral()(0, 0) / (2.0 * 1i * lambda);
  const Complex measured = sp.A(0, 0) - 1.0;
  CHECK(std::abs(measured - predicted) < 0.05 * std::abs(predicted));
}

TEST_CASE("wronskian: free, real lambda, and the quadrature identity") {
  CHECK(wronskian_defect(solve_jost(MatrixPotential::free(2), 5.0)).norm() < 1e-14);
  const auto pot = random_step_potential(2, 2.0, 42);
  CHECK(wronskian_defect(solve_jost(pot, 1.7)).norm() < 1e-6);
  SolverOptions opts;
  opts.grid_step = 1e-3;
  const auto jost = solve_jost(pot, Complex(1.0, 1.0), opts);
  const CMatrix w = wronskian_defect(jost);
  CHECK(linalg::hermitian_defect(w) < 1e-8);
  CHECK(linalg::min_eigenvalue(w) >= -1e-6);
  const CMatrix rhs = wronskian_integral(jost);
  CHECK((w - rhs).norm() < 1e-3 * rhs.norm());
}

TEST_CASE("spectral density: free case is I / pi and the trace is positive") {
  const auto d = spectral_density(MatrixPotential::free(3), {-3.0, 0.0, 2.0});
  for (const auto& s : d.densities)
    CHECK((s - CMatrix::Identity(3, 3) / kPi).norm() < 1e-14);
  const auto pot = random_step_potential(2, 1.5, 8);
  const auto dd = spectral_density(pot, {-5.0, -0.5, 0.0, 4.0}, {}, 2);
  for (const auto& s : dd.densities) {
    CHECK(s.trace().real() > 0.0);
    CHECK(linalg::hermitian_defect(s) < 1e-10);
    CHECK(linalg::min_eigenvalue(s) > -1e-10);
  }
}

TEST_CASE("spectral density matches the discretized resolvent oracle") {
  const auto pot = step_half();
  double err = 0.0;
  for (double lambda = -4.0; lambda <= 4.0; lambda += 0.5) {
    const double main = density_at(pot, lambda)(0, 0).real();
    const double oracle = oracles::resolvent_density(pot, lambda)(0, 0).real();
    err = std::max(err, std::abs(main - oracle));
  }
  CHECK(err < 1e-2);
  // Free case: the oracle is exact up to the Poisson smoothing of a constant.
  const CMatrix f = oracles::resolvent_density(MatrixPotential::free(1), 1.0);
  CHECK(std::abs(f(0, 0).real() - 1.0 / kPi) < 1e-8);
}

TEST_CASE("resolvent kernel: free formula at lambda = i") {
  const Complex lambda = 1i;
  const auto k = resolvent_kernel(MatrixPotential::free(2), lambda, 1.0, 2.0);
  CHECK((k.value - free_resolvent_kernel(2, lambda, 1.0, 2.0)).cwiseAbs().maxCoeff() < 1e-10);
  const auto k2 = resolvent_kernel(MatrixPotential::free(1), lambda, 2.0, 1.0);
  CHECK((k2.value - free_resolvent_kernel(1, lambda, 2.0, 1.0)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("resolvent kernel: imaginary part at the origin lives in the (1,1) block") {
  const auto pot = random_step_potential(2, 1.5, 13);
  const auto k = resolvent_kernel(pot, 2i, 0.0, 0.0);
  const CMatrix im = (k.value - k.value.adjoint()) / (2.0 * 1i);
  CHECK(im.topRightCorner(2, 2).norm() < 1e-8);
  CHECK(im.bottomLeftCorner(2, 2).norm() < 1e-8);
  CHECK(im.bottomRightCorner(2, 2).norm() < 1e-8);
  CHECK(im.topLeftCorner(2, 2).norm() > 1e-3);
}

TEST_CASE("resolvent kernel: large-r limit against F2(0)^{-1}") {
  const auto pot = random_step_potential(2, 1.5, 17);
  const Complex lambda = 1i;
  const double r = pot.support_radius() + 20.0;
  const auto k = resolvent_kernel(pot, lambda, r, 0.0);
  const CMatrix f = jost_at_zero(pot, lambda);
  const CMatrix inv = f.bottomRows(2).inverse();
  CMatrix limit = CMatrix::Zero(4, 4);
  limit.topLeftCorner(2, 2) = 1i * inv;
  limit.bottomLeftCorner(2, 2) = -inv;
  CHECK((k.value * std::exp(-1i * lambda * r) - limit).norm() < 1e-6);
}

TEST_CASE("entropy: free case is zero and m = 1 equals -2 pi y ln|F2(0, iy)|") {
  const CVector xi = CVector::Unit(1, 0);
  const double y = 1.0;
  const auto nodes = entropy_nodes(y);
  CHECK(std::abs(entropy_lhs(spectral_density(MatrixPotential::free(1), nodes), xi, y)) < 1e-14);
  const auto pot = step_half();
  const double lhs = entropy_lhs(spectral_density(pot, nodes, {}, 4), xi, y);
  const CMatrix f = jost_at_zero(pot, Complex(0.0, y));
  const double exact = -2.0 * kPi * y * std::log(std::abs(f(1, 0)));
  CHECK(lhs == doctest::Approx(exact).epsilon(2e-3));
  CHECK(lhs <= 0.0);
}

TEST_CASE("entropy: log singularity is reported") {
  SpectralDensity d{{-1.0, 0.0, 1.0},
                    {CMatrix::Identity(1, 1), CMatrix::Zero(1, 1), CMatrix::Identity(1, 1)}};
  CHECK_THROWS_AS(entropy_lhs(d, CVector::Unit(1, 0), 1.0), LogSingularity);
}

TEST_CASE("szego: free interval and the explicit bound") {
  const CVector e1 = CVector::Unit(2, 0);
  const auto free = szego_interval_bound(MatrixPotential::free(2), e1, {-1.0, 1.0});
  CHECK(free.lhs == doctest::Approx(2.0 * std::log(1.0 / kPi)).epsilon(1e-12));
  CHECK(free.rhs_l2 == 0.0);
  const auto pot = random_step_potential(2, 2.0, 31);
  const auto sb = szego_interval_bound(pot, e1, {-3.0, 3.0});
  CHECK(sb.rhs_l2 > 0.0);
  CHECK(sb.lhs >= szego_explicit_bound({-3.0, 3.0}, sb.rhs_l2));
  const auto point = szego_interval_bound(pot, e1, {0.5, 0.5});
  CHECK(point.lhs == 0.0);
}

TEST_CASE("f2 asymptotics") {
  const auto free = f2_asymptotic_check(MatrixPotential::free(1), 10.0);
  CHECK(free.measured.norm() < 1e-14);
  CHECK(free.predicted.norm() == 0.0);
  const auto bump = MatrixPotential::scalar(profiles::bump(0.2, 1.2), 0.0, 0.8);
  CHECK(f2_asymptotic_check(bump, 200.0).relative_error < 0.02);

  CMatrix a(2, 2), b(2, 2);
  a << 0.3, 0.2i, -0.2i, -0.1;
  b << 0.5, 0.1, 0.1, 0.4;
  const auto pot2 = MatrixPotential::from_terms(2, {{profiles::bump(0.1, 1.1), a, b}});
  const auto chk = f2_asymptotic_check(pot2, 400.0);
  CHECK(linalg::hermitian_defect(chk.predicted) < 1e-12);
  CHECK(linalg::min_eigenvalue(-chk.predicted) >= -1e-14);
  const CMatrix herm = linalg::hermitian_part(chk.measured);
  CHECK((herm - chk.predicted).norm() < 0.05 * chk.predicted.norm());
}

TEST_CASE("superposition: block-diagonal potential gives block-diagonal outputs") {
  const auto p = step_half();
  const auto q = MatrixPotential::scalar(profiles::bump(0.0, 2.0), 0.4, -0.3);
  const auto d = MatrixPotential::block_diagonal(p, q);
  for (double lambda : {-2.0, 0.7, 3.1}) {
    const auto sd = scattering_coefficients(solve_jost(d, lambda));
    const auto sp = scattering_coefficients(solve_jost(p, lambda));
    const auto sq = scattering_coefficients(solve_jost(q, lambda));
    CHECK(std::abs(sd.A(0, 1)) < 1e-8);
    CHECK(std::abs(sd.B(1, 0)) < 1e-8);
    CHECK(std::abs(sd.A(0, 0) - sp.A(0, 0)) < 1e-8);
    CHECK(std::abs(sd.A(1, 1) - sq.A(0, 0)) < 1e-8);
    CHECK(std::abs(sd.B(1, 1) - sq.B(0, 0)) < 1e-8);
    const CMatrix dens = density_at(d, lambda);
    CHECK(std::abs(dens(0, 0) - density_at(p, lambda)(0, 0)) < 1e-8);
    CHECK(std::abs(dens(1, 1) - density_at(q, lambda)(0, 0)) < 1e-8);
    CHECK(std::abs(dens(0, 1)) < 1e-8);
  }
}

TEST_CASE("reality: real-symmetric potential gives conjugate-symmetric solutions") {
  CMatrix a(2, 2), b(2, 2);
  a << 0.3, 0.2, 0.2, -0.1;
  b << 0.5, -0.4, -0.4, 0.1;
  const auto pot = MatrixPotential::from_terms(2, {{profiles::step(0.0, 1.5), a, b}});
  const auto grid = RadialGrid::uniform(2.0, 0.01);
  const Complex lambda(1.3, 0.4);
  const auto s1 = solve_regular(pot, lambda, grid);
  const auto s2 = solve_regular(pot, std::conj(lambda), grid);
  double err = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    err = std::max(err, (s1.phi[i] - s2.phi[i].conjugate()).norm());
    err = std::max(err, (s1.psi[i] - s2.psi[i].conjugate()).norm());
  }
  CHECK(err < 1e-10);
}
