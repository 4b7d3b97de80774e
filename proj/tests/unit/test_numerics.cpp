#include "diracac/dirac1d.hpp"
#include "diracac/grid.hpp"
#include "diracac/linalg.hpp"
#include "diracac/oracles.hpp"
#include "diracac/potential_io.hpp"
#include "diracac/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace diracac;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 5, 16, 40}) {
    const auto& rule = quad::gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], p);
      const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("panelled integral and simpson agree with closed forms") {
  CHECK(quad::integrate([](double x) { return std::exp(x); }, 0.0, 2.0) ==
        doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-14));
  std::vector<double> v(201);
  for (int i = 0; i <= 200; ++i) v[i] = std::sin(kPi * i / 200.0);
  CHECK(quad::simpson(v, kPi / 200.0) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("cubic spline reproduces a cubic away from the natural ends") {
  std::vector<double> x;
  std::vector<Complex> y;
  for (int i = 0; i <= 400; ++i) {
    x.push_back(i * 0.01);
    y.push_back(Complex(std::sin(x.back()), std::cos(x.back())));
  }
  quad::CubicSpline s(x, y);
  CHECK(std::abs(s(1.2345) - Complex(std::sin(1.2345), std::cos(1.2345))) < 1e-8);
}

TEST_CASE("radial grid hits r_max exactly and is uniform") {
  const auto g = RadialGrid::uniform(3.0, 0.07);
  CHECK(g.node(0) == 0.0);
  CHECK(g.nodes().back() == 3.0);
  for (std::size_t i = 1; i < g.size(); ++i)
    CHECK(std::abs(g.node(i) - g.node(i - 1) - g.step()) < 1e-12 * g.step() + 1e-15);
  CHECK(g.index_below(1.0) == static_cast<std::size_t>(std::floor(1.0 / g.step())));
  CHECK_THROWS_AS(RadialGrid::uniform(-1.0, 0.1), InvalidArgument);
}

TEST_CASE("matrix absolute value and checked inverse") {
  CMatrix m(2, 2);
  m << 1.0, 2.0i, 0.0, -3.0;
  const CMatrix abs = linalg::matrix_abs(m);
  CHECK((abs * abs - m.adjoint() * m).norm() < 1e-12);
  CHECK(linalg::min_eigenvalue(abs) >= -1e-14);
  CHECK((linalg::checked_inverse(m, 1e12) * m - CMatrix::Identity(2, 2)).norm() < 1e-12);
  CMatrix sing = CMatrix::Ones(2, 2);
  CHECK_THROWS_AS(linalg::checked_inverse(sing, 1e12), NearDegenerate);
}

TEST_CASE("expm oracle matches rotation and diagonal cases") {
  CMatrix g(2, 2);
  g << 0.0, 3.0, -3.0, 0.0;
  const CMatrix e = oracles::expm(g);
  CHECK(std::abs(e(0, 0) - std::cos(3.0)) < 1e-13);
  CHECK(std::abs(e(0, 1) - std::sin(3.0)) < 1e-13);
  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 1.0, -20.0, 2.0i;
  const CMatrix ed = oracles::expm(d);
  CHECK(std::abs(ed(1, 1) - std::exp(-20.0)) < 1e-20);
  CHECK(std::abs(ed(2, 2) - std::exp(2.0i)) < 1e-13);
}

TEST_CASE("jost_transfer: free plane wave and agreement with the Jost solver") {
  const CMatrix f = oracles::jost_transfer(MatrixPotential::free(2), Complex(1.5, 0.2));
  CHECK((f.topRows(2) + 1i * CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK((f.bottomRows(2) - CMatrix::Identity(2, 2)).norm() < 1e-14);
  const auto pot = random_step_potential(2, 2.0, 17);
  for (Complex lambda : {Complex(-3.0), Complex(0.4), Complex(2.0, 1.0)}) {
    const CMatrix main = dirac1d::jost_at_zero(pot, lambda);
    CHECK((oracles::jost_transfer(pot, lambda) - main).norm() < 1e-6 * main.norm());
  }
  const auto smooth = MatrixPotential::scalar(profiles::bump(0.0, 1.0), 0.0, 1.0);
  CHECK_THROWS_AS(oracles::jost_transfer(smooth, 1.0), InvalidArgument);
}
