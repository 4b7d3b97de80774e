#include "diracac/linalg.hpp"
#include "diracac/potential.hpp"
#include "diracac/potential_io.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace diracac;

TEST_CASE("step profile is one-sided at its jumps") {
  const auto p = profiles::step(1.0, 2.0);
  CHECK(p(1.0, Side::Left) == 0.0);
  CHECK(p(1.0, Side::Right) == 1.0);
  CHECK(p(2.0, Side::Left) == 1.0);
  CHECK(p(2.0, Side::Right) == 0.0);
  CHECK(p(1.5) == 1.0);
}

TEST_CASE("bump profile is smooth, peaks at one and vanishes at the ends") {
  const auto p = profiles::bump(0.2, 0.8);
  CHECK(p(0.5) == doctest::Approx(1.0));
  CHECK(p(0.2) == 0.0);
  CHECK(p(0.8) == 0.0);
  CHECK(p(0.21) < 1e-6);
  CHECK(p(0.201) < 1e-60);
}

TEST_CASE("scalar step potential evaluates and integrates") {
  const auto pot = MatrixPotential::scalar(profiles::step(0.0, 1.0), 0.0, 0.5);
  CHECK(pot.size() == 1);
  CHECK(pot.support_radius() == 1.0);
  CHECK(pot.b(0.3)(0, 0) == Complex(0.5));
  CHECK(pot.b(1.0, Side::Right)(0, 0) == Complex(0.0));
  CHECK(pot.b(1.0, Side::Left)(0, 0) == Complex(0.5));
  CHECK(pot.abs_g_squared_integral()(0, 0).real() == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(pot.sup_norm() == doctest::Approx(0.5));
}

TEST_CASE("non-Hermitian coefficients are symmetrized with a warning") {
  std::string captured;
  set_warning_sink([&](const std::string& m) { captured = m; });
  CMatrix b(2, 2);
  b << 1.0, 1.0, 0.0, 1.0;
  const auto pot = MatrixPotential::from_terms(
      2, {{profiles::step(0.0, 1.0), CMatrix::Zero(2, 2), b}});
  CHECK(!captured.empty());
  CHECK(linalg::hermitian_defect(pot.b(0.5)) < 1e-12);
  set_warning_sink({});
}

TEST_CASE("transforms: scaled, truncated, block diagonal, sum") {
  const auto p = MatrixPotential::scalar(profiles::step(0.0, 4.0), 0.2, 0.5);
  const auto q = MatrixPotential::scalar(profiles::bump(0.0, 2.0), 0.0, 1.0);
  CHECK(p.scaled(2.0).b(1.0)(0, 0) == Complex(1.0));
  const auto t = p.truncated(2.0);
  CHECK(t.support_radius() == 2.0);
  CHECK(t.b(3.0)(0, 0) == Complex(0.0));
  CHECK(t.b(1.5)(0, 0) == Complex(0.5));
  const auto d = MatrixPotential::block_diagonal(p, q);
  CHECK(d.size() == 2);
  CHECK(d.support_radius() == 4.0);
  CHECK(d.b(1.0)(1, 1).real() == doctest::Approx(q.b(1.0)(0, 0).real()));
  CHECK(d.b(1.0)(0, 1) == Complex(0.0));
  const auto s = MatrixPotential::sum(p, p);
  CHECK(s.a(1.0)(0, 0) == Complex(0.4));
}

TEST_CASE("potential file round trip") {
  const auto pot = random_bump_potential(2, 1.5, 7);
  const auto grid = RadialGrid::uniform(2.0, 0.01);
  std::stringstream ss;
  write_potential(ss, pot, grid);
  const auto back = read_potential(ss);
  CHECK(back.size() == 2);
  CHECK(back.support_radius() == 1.5);
  for (double r : {0.0, 0.37, 1.02, 1.49}) {
    CHECK((back.a(r) - pot.a(r)).norm() < 1e-3);
    CHECK((back.b(r) - pot.b(r)).norm() < 1e-3);
  }
  CHECK((back.a(grid.node(37)) - pot.a(grid.node(37))).norm() < 1e-14);
}

TEST_CASE("potential file errors") {
  std::stringstream bad("dirac1d-potential v1\nm 1\nstep 0.5\nr_max 1\nsupport_radius 1\nnodes 3\n1,0 0,0\n1,0 x\n");
  CHECK_THROWS_AS(read_potential(bad), InvalidArgument);
  std::stringstream wrong("not a potential\n");
  CHECK_THROWS_AS(read_potential(wrong), InvalidArgument);
}

TEST_CASE("random potentials are Hermitian and respect the support") {
  for (std::uint64_t seed = 1; seed < 6; ++seed) {
    const auto pot = random_step_potential(3, 2.0, seed);
    CHECK(pot.support_radius() == doctest::Approx(2.0));
    for (double r : {0.1, 0.9, 1.7}) {
      CHECK(linalg::hermitian_defect(pot.a(r)) < 1e-12);
      CHECK(linalg::hermitian_defect(pot.b(r)) < 1e-12);
    }
    CHECK(pot.b(2.5).norm() == 0.0);
  }
}
