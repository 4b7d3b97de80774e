#include "diracac/oracles.hpp"

#include "diracac/dirac1d.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <vector>

namespace diracac::oracles {

CMatrix expm(const CMatrix& m) {
  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const CMatrix x = m / std::ldexp(1.0, squarings);
  CMatrix term = CMatrix::Identity(m.rows(), m.cols());
  CMatrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
    if (term.norm() < 1e-18 * sum.norm()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

CMatrix constant_generator(const CMatrix& a, const CMatrix& b, Complex lambda) {
  const Eigen::Index m = a.rows();
  const CMatrix id = CMatrix::Identity(m, m);
  CMatrix g(2 * m, 2 * m);
  g << a, lambda * id - b, -(lambda * id + b), -a;
  return g;
}

CMatrix jost_transfer(const MatrixPotential& pot, Complex lambda) {
  const int m = pot.size();
  const double support = pot.support_radius();
  std::vector<double> edges{0.0};
  for (double x : pot.breakpoints())
    if (x > 0.0 && x < support) edges.push_back(x);
  edges.push_back(support);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const Complex e = std::exp(1i * lambda * support);
  CMatrix y(2 * m, m);
  y << -1i * e * CMatrix::Identity(m, m), e * CMatrix::Identity(m, m);
  CMatrix a(m, m), b(m, m), a2(m, m), b2(m, m);
  for (std::size_t k = edges.size() - 1; k-- > 0;) {
    const double lo = edges[k], hi = edges[k + 1];
    if (hi <= lo) continue;
    pot.evaluate(0.5 * (lo + hi), Side::Right, a, b);
    for (double t : {0.01, 0.99}) {
      pot.evaluate(lo + t * (hi - lo), Side::Right, a2, b2);
      if ((a2 - a).norm() + (b2 - b).norm() > 1e-12 * (1.0 + a.norm() + b.norm()))
        throw InvalidArgument("jost_transfer: potential is not piecewise constant");
    }
    y = expm(-(hi - lo) * constant_generator(a, b, lambda)) * y;
  }
  return y;
}

CMatrix resolvent_density(const MatrixPotential& pot, double lambda,
                          const ResolventOracleOptions& opts) {
  if (opts.length < pot.support_radius())
    throw InvalidArgument("resolvent_density: interval must cover the support");
  const int m = pot.size();
  const Complex z(lambda, opts.epsilon);
  std::vector<double> anchors;
  const int cells = static_cast<int>(std::ceil(opts.length / opts.step - 1e-9));
  for (int i = 0; i <= cells; ++i) anchors.push_back(opts.length * i / cells);
  const std::vector<double> x =
      dirac1d::integration_mesh(anchors, pot.breakpoints(), opts.length, 0.0, 1.0,
                                opts.step);
  const std::size_t n = x.size() - 1;
  const Eigen::Index dim = 2 * m * static_cast<Eigen::Index>(n + 1);

  using Triplet = Eigen::Triplet<Complex>;
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(8 * m * m) * n + 4 * m);
  Eigen::Index row = 0;
  // u2(0) = -xi
  for (int i = 0; i < m; ++i) entries.emplace_back(row++, m + i, 1.0);
  CMatrix a(m, m), b(m, m);
  for (std::size_t k = 0; k < n; ++k) {
    const double h = x[k + 1] - x[k];
    pot.evaluate(0.5 * (x[k] + x[k + 1]), Side::Right, a, b);
    const CMatrix g = constant_generator(a, b, z);
    const Eigen::Index c0 = 2 * m * static_cast<Eigen::Index>(k), c1 = c0 + 2 * m;
    // (u_{k+1} - u_k) / h - g (u_k + u_{k+1}) / 2 = 0
    for (int i = 0; i < 2 * m; ++i) {
      for (int j = 0; j < 2 * m; ++j) {
        const Complex gij = 0.5 * g(i, j);
        const Complex d = i == j ? 1.0 / h : 0.0;
        if (gij != 0.0 || d != 0.0) {
          entries.emplace_back(row + i, c0 + j, -d - gij);
          entries.emplace_back(row + i, c1 + j, d - gij);
        }
      }
    }
    row += 2 * m;
  }
  // u1(L) + i u2(L) = 0
  const Eigen::Index cl = 2 * m * static_cast<Eigen::Index>(n);
  for (int i = 0; i < m; ++i) {
    entries.emplace_back(row, cl + i, 1.0);
    entries.emplace_back(row, cl + m + i, 1i);
    ++row;
  }
  Eigen::SparseMatrix<Complex> sys(dim, dim);
  sys.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
  lu.compute(sys);
  if (lu.info() != Eigen::Success)
    throw NearDegenerate(INFINITY, "resolvent_density: sparse factorization failed");
  CMatrix rhs = CMatrix::Zero(dim, m);
  for (int i = 0; i < m; ++i) rhs(i, i) = -1.0;
  const CMatrix u = lu.solve(rhs);
  const CMatrix k = u.topRows(m);
  return (k - k.adjoint()) / (2.0 * kPi * 1i);
}

}  // namespace diracac::oracles
