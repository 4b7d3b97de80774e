#include "diracac/dirac1d.hpp"

#include "diracac/linalg.hpp"
#include "diracac/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

namespace diracac::dirac1d {

namespace {

struct Mesh {
  std::vector<double> x;
  std::vector<std::size_t> anchor_index;  // mesh index of each anchor
};

Mesh build_mesh(const std::vector<double>& anchors,
                const std::vector<double>& breakpoints, double r_end,
                Complex lambda, const SolverOptions& opts) {
  Mesh mesh;
  mesh.x = integration_mesh(anchors, breakpoints, r_end, lambda, opts.phase_step,
                            opts.grid_step);
  mesh.anchor_index.reserve(anchors.size());
  for (double a : anchors) {
    const auto it = std::lower_bound(mesh.x.begin(), mesh.x.end(), a - 1e-13);
    mesh.anchor_index.push_back(static_cast<std::size_t>(it - mesh.x.begin()));
  }
  return mesh;
}

// Coefficient matrix of Y' = M Y, optionally shifted by -i lambda.
void fill_generator(const CMatrix& a, const CMatrix& b, Complex lambda,
                    Complex shift, CMatrix& gen) {
  const Eigen::Index m = a.rows();
  const CMatrix id = CMatrix::Identity(m, m);
  gen.topLeftCorner(m, m) = a + shift * id;
  gen.topRightCorner(m, m) = lambda * id - b;
  gen.bottomLeftCorner(m, m) = -(lambda * id + b);
  gen.bottomRightCorner(m, m) = -a + shift * id;
}

// Classical RK4 across one mesh cell [r0, r1] (either direction). The
// potential is sampled from inside the cell at both ends.
class Rk4Stepper {
 public:
  Rk4Stepper(const MatrixPotential& pot, Complex lambda, Complex shift)
      : pot_(pot), lambda_(lambda), shift_(shift), m_(pot.size()) {
    a_.resize(m_, m_);
    b_.resize(m_, m_);
    g0_.resize(2 * m_, 2 * m_);
    gm_.resize(2 * m_, 2 * m_);
    g1_.resize(2 * m_, 2 * m_);
  }

  void step(double from, double to, CMatrix& y) {
    const double lo = std::min(from, to), hi = std::max(from, to);
    pot_.evaluate(lo, Side::Right, a_, b_);
    fill_generator(a_, b_, lambda_, shift_, from < to ? g0_ : g1_);
    pot_.evaluate(0.5 * (lo + hi), Side::Right, a_, b_);
    fill_generator(a_, b_, lambda_, shift_, gm_);
    pot_.evaluate(hi, Side::Left, a_, b_);
    fill_generator(a_, b_, lambda_, shift_, from < to ? g1_ : g0_);
    const double h = to - from;
    k1_.noalias() = g0_ * y;
    tmp_ = y + (0.5 * h) * k1_;
    k2_.noalias() = gm_ * tmp_;
    tmp_ = y + (0.5 * h) * k2_;
    k3_.noalias() = gm_ * tmp_;
    tmp_ = y + h * k3_;
    k4_.noalias() = g1_ * tmp_;
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  const MatrixPotential& pot_;
  Complex lambda_, shift_;
  int m_;
  CMatrix a_, b_, g0_, gm_, g1_, k1_, k2_, k3_, k4_, tmp_;
};

void check_finite(const CMatrix& y, double r, const char* what) {
  if (!y.allFinite()) {
    std::ostringstream os;
    os << what << ": non-finite values at r = " << r;
    throw IntegrationBlowup(r, os.str());
  }
}

CMatrix plane_wave(int m, Complex lambda, double r) {
  const Complex e = std::exp(1i * lambda * r);
  CMatrix y(2 * m, m);
  y.topRows(m) = (-1i * e) * CMatrix::Identity(m, m);
  y.bottomRows(m) = e * CMatrix::Identity(m, m);
  return y;
}

CMatrix reduced_terminal(int m) { return plane_wave(m, 0.0, 0.0); }

// Backward RK4 for the reduced Jost data from the support radius to r.
CMatrix reduced_jost_ode(const MatrixPotential& pot, Complex lambda, double r,
                         const SolverOptions& opts) {
  const int m = pot.size();
  const double R = pot.support_radius();
  CMatrix f = reduced_terminal(m);
  if (r >= R) return f;
  const auto x = integration_mesh({r, R}, pot.breakpoints(), R, lambda,
                                  opts.phase_step, opts.grid_step);
  Rk4Stepper stepper(pot, lambda, -1i * lambda);
  for (std::size_t k = x.size() - 1; k > 0; --k) {
    if (x[k] <= r) break;
    stepper.step(x[k], x[k - 1], f);
    check_finite(f, x[k - 1], "solve_jost");
  }
  return f;
}

JostRoute pick_route(Complex lambda, const SolverOptions& opts) {
  if (opts.route != JostRoute::Auto) return opts.route;
  return std::abs(lambda.imag()) <= opts.picard_max_im ? JostRoute::Picard
                                                       : JostRoute::Ode;
}

// Volterra system for S1 and T2 = e^{-2 i lambda r} S2 on mesh nodes and cell
// midpoints:
//   S1(r) = I + int_r^R (b - i a) T2 ds,
//   T2(r) = int_r^R e^{2 i lambda (s - r)} (b + i a) S1 ds.
// Each sweep is one Picard step; cell integrals use Simpson's rule and the
// midpoint values use the quadratic rule over the upper half cell.
struct PicardResult {
  std::vector<CMatrix> s1, t2;  // at points 2k (node k) and 2k + 1 (midpoint)
  int iterations = 0;
  double residual = 0.0;
};

PicardResult picard_volterra(const MatrixPotential& pot, Complex lambda,
                             const std::vector<double>& x,
                             const SolverOptions& opts) {
  const int m = pot.size();
  const std::size_t cells = x.size() - 1;
  const std::size_t npts = 2 * cells + 1;
  // g = b + i a sampled inside each cell: left end, midpoint, right end.
  std::vector<CMatrix> g0(cells), gm(cells), g1(cells);
  std::vector<Complex> e1(cells);  // e^{i lambda h}
  CMatrix a(m, m), b(m, m);
  for (std::size_t k = 0; k < cells; ++k) {
    pot.evaluate(x[k], Side::Right, a, b);
    g0[k] = b + 1i * a;
    pot.evaluate(0.5 * (x[k] + x[k + 1]), Side::Right, a, b);
    gm[k] = b + 1i * a;
    pot.evaluate(x[k + 1], Side::Left, a, b);
    g1[k] = b + 1i * a;
    e1[k] = std::exp(1i * lambda * (x[k + 1] - x[k]));
  }

  const CMatrix id = CMatrix::Identity(m, m);
  PicardResult res;
  res.s1.assign(npts, id);
  res.t2.assign(npts, CMatrix::Zero(m, m));
  std::vector<CMatrix> s1n(npts, id), t2n(npts, CMatrix::Zero(m, m));
  CMatrix u0(m, m), um(m, m), u1(m, m), w0(m, m), wm(m, m), w1(m, m);

  for (int it = 1; it <= opts.picard_max_iter; ++it) {
    s1n[npts - 1] = id;
    t2n[npts - 1].setZero();
    for (std::size_t k = cells; k-- > 0;) {
      const double h = x[k + 1] - x[k];
      const std::size_t p0 = 2 * k, pm = 2 * k + 1, p1 = 2 * k + 2;
      u0.noalias() = g0[k].adjoint() * res.t2[p0];
      um.noalias() = gm[k].adjoint() * res.t2[pm];
      u1.noalias() = g1[k].adjoint() * res.t2[p1];
      w0.noalias() = g0[k] * res.s1[p0];
      wm.noalias() = gm[k] * res.s1[pm];
      w1.noalias() = g1[k] * res.s1[p1];
      const Complex e = e1[k], e2 = e * e;
      s1n[pm] = s1n[p1] + (h / 24.0) * (-u0 + 8.0 * um + 5.0 * u1);
      s1n[p0] = s1n[p1] + (h / 6.0) * (u0 + 4.0 * um + u1);
      t2n[pm] = e * t2n[p1] +
                (h / 24.0) * ((-1.0 / e) * w0 + 8.0 * wm + (5.0 * e) * w1);
      t2n[p0] = e2 * t2n[p1] + (h / 6.0) * (w0 + (4.0 * e) * wm + e2 * w1);
    }
    double change = 0.0;
    for (std::size_t p = 0; p < npts; ++p) {
      change = std::max(change, (s1n[p] - res.s1[p]).norm());
      change = std::max(change, (t2n[p] - res.t2[p]).norm());
    }
    std::swap(res.s1, s1n);
    std::swap(res.t2, t2n);
    res.iterations = it;
    res.residual = change;
    if (!std::isfinite(change))
      throw IntegrationBlowup(0.0, "solve_jost: Picard iterates became non-finite");
    if (change < opts.picard_tol) return res;
  }
  std::ostringstream os;
  os << "solve_jost: Picard iteration did not reach " << opts.picard_tol
     << " within " << opts.picard_max_iter << " iterations (last change "
     << res.residual << ")";
  throw NonConvergence(res.residual, os.str());
}

void validate_lambda(Complex lambda, const char* what) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw InvalidArgument(std::string(what) + ": lambda must be finite");
}

}  // namespace

std::vector<double> integration_mesh(const std::vector<double>& anchors,
                                     const std::vector<double>& breakpoints,
                                     double r_end, Complex lambda,
                                     double phase_step, double max_step) {
  std::vector<double> base{0.0, r_end};
  for (double a : anchors)
    if (a >= 0.0 && a <= r_end) base.push_back(a);
  for (double b : breakpoints)
    if (b > 0.0 && b < r_end) base.push_back(b);
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end(),
                         [](double p, double q) { return q - p < 1e-13; }),
             base.end());
  const double mod = std::abs(lambda);
  const double hmax =
      std::min(max_step, mod > 0.0 ? phase_step / mod
                                   : std::numeric_limits<double>::infinity());
  std::vector<double> x{base.front()};
  for (std::size_t i = 1; i < base.size(); ++i) {
    const double len = base[i] - base[i - 1];
    const int n = std::isfinite(hmax)
                      ? std::max(1, static_cast<int>(std::ceil(len / hmax - 1e-9)))
                      : 1;
    for (int j = 1; j < n; ++j) x.push_back(base[i - 1] + len * j / n);
    x.push_back(base[i]);
  }
  return x;
}

//------------------------------------------------------------------------------
RegularSolution solve_regular(const MatrixPotential& pot, Complex lambda,
                              const RadialGrid& grid, const SolverOptions& opts) {
  validate_lambda(lambda, "solve_regular");
  if (grid.r_max() < pot.support_radius())
    throw InvalidArgument("solve_regular: grid must cover the support");
  const int m = pot.size();
  const Mesh mesh = build_mesh(grid.nodes(), pot.breakpoints(), grid.r_max(),
                               lambda, opts);
  RegularSolution sol{lambda, grid, {}, {}};
  sol.phi.reserve(grid.size());
  sol.psi.reserve(grid.size());
  CMatrix y = CMatrix::Zero(2 * m, m);
  y.topRows(m).setIdentity();
  Rk4Stepper stepper(pot, lambda, 0.0);
  std::size_t next = 0;
  for (std::size_t k = 0; k < mesh.x.size(); ++k) {
    if (k > 0) {
      stepper.step(mesh.x[k - 1], mesh.x[k], y);
      check_finite(y, mesh.x[k], "solve_regular");
    }
    while (next < mesh.anchor_index.size() && mesh.anchor_index[next] == k) {
      sol.phi.push_back(y.topRows(m));
      sol.psi.push_back(y.bottomRows(m));
      ++next;
    }
  }
  return sol;
}

CMatrix regular_at(const MatrixPotential& pot, Complex lambda, double r,
                   const SolverOptions& opts) {
  validate_lambda(lambda, "regular_at");
  if (r < 0.0) throw InvalidArgument("regular_at: r must be non-negative");
  const int m = pot.size();
  CMatrix y = CMatrix::Zero(2 * m, m);
  y.topRows(m).setIdentity();
  if (r == 0.0) return y;
  const auto x = integration_mesh({}, pot.breakpoints(), r, lambda,
                                  opts.phase_step, opts.grid_step);
  Rk4Stepper stepper(pot, lambda, 0.0);
  for (std::size_t k = 1; k < x.size(); ++k) {
    stepper.step(x[k - 1], x[k], y);
    check_finite(y, x[k], "regular_at");
  }
  return y;
}

JostSolution solve_jost(const MatrixPotential& pot, Complex lambda,
                        const RadialGrid& grid, const SolverOptions& opts) {
  validate_lambda(lambda, "solve_jost");
  if (lambda.imag() < 0.0)
    throw InvalidArgument("solve_jost: requires Im lambda >= 0");
  const int m = pot.size();
  const double R = pot.support_radius();
  JostSolution sol;
  sol.lambda = lambda;
  sol.grid = grid;
  sol.support_radius = R;
  sol.route = pick_route(lambda, opts);

  std::vector<double> inner;
  for (double r : grid.nodes())
    if (r < R) inner.push_back(r);
  inner.push_back(R);

  std::vector<CMatrix> red(inner.size());  // stacked (f1, f2) at inner nodes
  if (R > 0.0) {
    const Mesh mesh = build_mesh(inner, pot.breakpoints(), R, lambda, opts);
    if (sol.route == JostRoute::Picard) {
      const PicardResult pr = picard_volterra(pot, lambda, mesh.x, opts);
      sol.iterations = pr.iterations;
      sol.residual = pr.residual;
      for (std::size_t i = 0; i < inner.size(); ++i) {
        const std::size_t p = 2 * mesh.anchor_index[i];
        CMatrix f(2 * m, m);
        f.topRows(m) = -1i * pr.s1[p] + pr.t2[p];
        f.bottomRows(m) = pr.s1[p] - 1i * pr.t2[p];
        red[i] = std::move(f);
      }
    } else {
      CMatrix f = reduced_terminal(m);
      Rk4Stepper stepper(pot, lambda, -1i * lambda);
      std::size_t next = inner.size();
      for (std::size_t k = mesh.x.size(); k-- > 0;) {
        if (k + 1 < mesh.x.size()) {
          stepper.step(mesh.x[k + 1], mesh.x[k], f);
          check_finite(f, mesh.x[k], "solve_jost");
        }
        while (next > 0 && mesh.anchor_index[next - 1] == k) red[--next] = f;
      }
    }
  } else {
    red[0] = reduced_terminal(m);
  }

  const std::size_t n = grid.size();
  sol.f1_full.resize(n);
  sol.f2_full.resize(n);
  sol.f1_red.resize(n);
  sol.f2_red.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.node(i);
    const CMatrix f = r < R ? red[i] : reduced_terminal(m);
    const Complex e = std::exp(1i * lambda * r);
    sol.f1_red[i] = f.topRows(m);
    sol.f2_red[i] = f.bottomRows(m);
    sol.f1_full[i] = e * sol.f1_red[i];
    sol.f2_full[i] = e * sol.f2_red[i];
  }
  return sol;
}

JostSolution solve_jost(const MatrixPotential& pot, Complex lambda,
                        const SolverOptions& opts) {
  const double R = std::max(pot.support_radius(), opts.grid_step);
  return solve_jost(pot, lambda, RadialGrid::uniform(R, opts.grid_step), opts);
}

CMatrix jost_at(const MatrixPotential& pot, Complex lambda, double r,
                const SolverOptions& opts) {
  validate_lambda(lambda, "jost_at");
  if (r < 0.0) throw InvalidArgument("jost_at: r must be non-negative");
  if (r >= pot.support_radius()) return plane_wave(pot.size(), lambda, r);
  return std::exp(1i * lambda * r) * reduced_jost_ode(pot, lambda, r, opts);
}

CMatrix jost_at_zero(const MatrixPotential& pot, Complex lambda,
                     const SolverOptions& opts) {
  validate_lambda(lambda, "jost_at_zero");
  if (lambda.imag() < 0.0)
    throw InvalidArgument("jost_at_zero: requires Im lambda >= 0");
  const int m = pot.size();
  const double R = pot.support_radius();
  if (R == 0.0) return plane_wave(m, lambda, 0.0);
  if (pick_route(lambda, opts) == JostRoute::Ode)
    return reduced_jost_ode(pot, lambda, 0.0, opts);
  const auto x = integration_mesh({}, pot.breakpoints(), R, lambda,
                                  opts.phase_step, opts.grid_step);
  const PicardResult pr = picard_volterra(pot, lambda, x, opts);
  CMatrix f(2 * m, m);
  f.topRows(m) = -1i * pr.s1[0] + pr.t2[0];
  f.bottomRows(m) = pr.s1[0] - 1i * pr.t2[0];
  return f;
}

//------------------------------------------------------------------------------
ScatteringPair scattering_coefficients(Complex lambda, const CMatrix& f1_0,
                                       const CMatrix& f2_0) {
  return {lambda, 0.5 * (f2_0 + 1i * f1_0), 0.5 * (f2_0 - 1i * f1_0)};
}

ScatteringPair scattering_coefficients(const JostSolution& jost) {
  return scattering_coefficients(jost.lambda, jost.f1_at_zero(), jost.f2_at_zero());
}

CMatrix wronskian_defect(const CMatrix& f1_0, const CMatrix& f2_0) {
  const Eigen::Index m = f1_0.rows();
  return (f1_0.adjoint() * f2_0 - f2_0.adjoint() * f1_0) / 1i -
         2.0 * CMatrix::Identity(m, m);
}

CMatrix wronskian_defect(const JostSolution& jost) {
  return wronskian_defect(jost.f1_at_zero(), jost.f2_at_zero());
}

CMatrix wronskian_integral(const JostSolution& jost) {
  const int m = jost.size();
  const double y = jost.lambda.imag();
  // f1 + i f2 vanishes beyond the support, so only [0, R] contributes.
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < jost.grid.size(); ++i) {
    idx.push_back(i);
    if (jost.grid.node(i) >= jost.support_radius) break;
  }
  CMatrix total = CMatrix::Zero(m, m);
  if (idx.size() < 2) return total;
  std::vector<Complex> samples(idx.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const CMatrix g = jost.f1_red[idx[k]] + 1i * jost.f2_red[idx[k]];
        samples[k] = g.col(i).dot(g.col(j));
      }
      total(i, j) = quad::simpson(samples, jost.grid.step());
    }
  return 2.0 * y * total;
}

CMatrix density_at(const MatrixPotential& pot, double lambda,
                   const SolverOptions& opts) {
  const int m = pot.size();
  const CMatrix f = jost_at_zero(pot, lambda, opts);
  const CMatrix inv = linalg::checked_inverse(f.bottomRows(m), opts.max_condition,
                                              "F2(0, lambda)");
  return linalg::hermitian_part(inv.adjoint() * inv) / kPi;
}

SpectralDensity spectral_density(const MatrixPotential& pot,
                                 const std::vector<double>& lambdas,
                                 const SolverOptions& opts, int threads) {
  SpectralDensity out{lambdas, std::vector<CMatrix>(lambdas.size())};
  const int workers =
      std::max(1, std::min<int>(threads, static_cast<int>(lambdas.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < lambdas.size(); ++i)
      out.densities[i] = density_at(pot, lambdas[i], opts);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i; (i = next++) < lambdas.size();)
          out.densities[i] = density_at(pot, lambdas[i], opts);
      } catch (...) {
        errors[w] = std::current_exception();
        next = lambdas.size();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

//------------------------------------------------------------------------------
ResolventKernelEntry resolvent_kernel(const MatrixPotential& pot, Complex lambda,
                                      double r, double s,
                                      const SolverOptions& opts) {
  if (!(lambda.imag() > 0.0))
    throw InvalidArgument("resolvent_kernel: requires Im lambda > 0");
  if (r < 0.0 || s < 0.0)
    throw InvalidArgument("resolvent_kernel: r and s must be non-negative");
  const int m = pot.size();
  const CMatrix reg_s = regular_at(pot, lambda, s, opts);
  const CMatrix jost_s = jost_at(pot, lambda, s, opts);
  CMatrix w(2 * m, 2 * m);
  w << reg_s.topRows(m), jost_s.topRows(m), reg_s.bottomRows(m),
      jost_s.bottomRows(m);
  const CMatrix z = linalg::checked_inverse(w, opts.max_condition,
                                            "[[Phi, F1], [Psi, F2]]");
  const auto z11 = z.topLeftCorner(m, m), z12 = z.topRightCorner(m, m);
  const auto z21 = z.bottomLeftCorner(m, m), z22 = z.bottomRightCorner(m, m);

  auto below = [&]() {  // r < s
    const CMatrix reg = r == s ? reg_s : regular_at(pot, lambda, r, opts);
    CMatrix k(2 * m, 2 * m);
    k << reg.topRows(m) * z12, -reg.topRows(m) * z11, reg.bottomRows(m) * z12,
        -reg.bottomRows(m) * z11;
    return k;
  };
  auto above = [&]() {  // r > s
    const CMatrix jost = r == s ? jost_s : jost_at(pot, lambda, r, opts);
    CMatrix k(2 * m, 2 * m);
    k << -jost.topRows(m) * z22, jost.topRows(m) * z21, -jost.bottomRows(m) * z22,
        jost.bottomRows(m) * z21;
    return k;
  };
  CMatrix value;
  if (r < s)
    value = below();
  else if (r > s)
    value = above();
  else
    value = 0.5 * (below() + above());
  return {lambda, r, s, std::move(value)};
}

CMatrix free_resolvent_kernel(int m, Complex lambda, double r, double s) {
  const CMatrix id = CMatrix::Identity(m, m);
  auto below = [&](double rr, double ss) {
    const Complex e = std::exp(1i * lambda * ss);
    const Complex c = std::cos(lambda * rr), sn = std::sin(lambda * rr);
    CMatrix out(2 * m, 2 * m);
    out << (1i * c * e) * id, (-c * e) * id, (-1i * sn * e) * id, (sn * e) * id;
    return out;
  };
  auto above = [&](double rr, double ss) {
    const Complex e = std::exp(1i * lambda * rr);
    const Complex c = std::cos(lambda * ss), sn = std::sin(lambda * ss);
    CMatrix out(2 * m, 2 * m);
    out << (1i * e * c) * id, (-1i * e * sn) * id, (-e * c) * id, (e * sn) * id;
    return out;
  };
  if (r < s) return below(r, s);
  if (r > s) return above(r, s);
  return 0.5 * (below(r, s) + above(r, s));
}

//------------------------------------------------------------------------------
namespace {

double log_density(const CMatrix& density, const CVector& xi, double lambda,
                   double scale) {
  const double q = scale * xi.dot(density * xi).real();
  if (!(q >= 1e-300)) {
    std::ostringstream os;
    os << "ln of non-positive spectral density " << q << " at lambda = " << lambda;
    throw LogSingularity(lambda, os.str());
  }
  return std::log(q);
}

bool uniform_nodes(const std::vector<double>& x) {
  if (x.size() < 3) return false;
  const double h = x[1] - x[0];
  for (std::size_t i = 2; i < x.size(); ++i)
    if (std::abs((x[i] - x[i - 1]) - h) > 1e-9 * std::abs(h)) return false;
  return true;
}

void check_unit(const CVector& xi, const char* what) {
  if (std::abs(xi.norm() - 1.0) > 1e-10)
    throw InvalidArgument(std::string(what) + ": xi must be a unit vector");
}

}  // namespace

double entropy_lhs(const SpectralDensity& density, const CVector& xi, double y) {
  if (!(y > 0.0)) throw InvalidArgument("entropy_lhs: y must be positive");
  check_unit(xi, "entropy_lhs");
  const auto& x = density.lambdas;
  if (x.size() < 2) throw InvalidArgument("entropy_lhs: need at least two nodes");
  std::vector<double> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    f[i] = y * y * log_density(density.densities[i], xi, x[i], kPi) /
           (y * y + x[i] * x[i]);
  double body = 0.0;
  if (uniform_nodes(x) && x.size() % 2 == 1) {
    body = quad::simpson(f, x[1] - x[0]);
  } else {
    for (std::size_t i = 1; i < x.size(); ++i)
      body += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  }
  // Beyond the node range pi sigma' = I, so the integrand is ln ||xi||^2.
  const double tail_measure =
      y * (kPi - std::atan(x.back() / y) + std::atan(x.front() / y));
  return body + std::log(xi.squaredNorm()) * tail_measure;
}

std::vector<double> entropy_nodes(double y, double span_factor, double spacing) {
  const double L = span_factor * y;
  int n = static_cast<int>(std::ceil(2.0 * L / spacing));
  if (n % 2 == 1) ++n;
  std::vector<double> x(n + 1);
  for (int i = 0; i <= n; ++i) x[i] = -L + 2.0 * L * i / n;
  return x;
}

SzegoBound szego_interval_bound(const MatrixPotential& pot, const CVector& xi,
                                std::pair<double, double> interval,
                                const SolverOptions& opts, double panel,
                                int nodes, int threads) {
  check_unit(xi, "szego_interval_bound");
  const auto [lo, hi] = interval;
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw InvalidArgument("szego_interval_bound: need a finite interval lo <= hi");
  SzegoBound out;
  out.rhs_l2 = pot.column_l2(xi);
  if (hi == lo) return out;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel)));
  const double w = (hi - lo) / panels;
  const auto& rule = quad::gauss_legendre(nodes);
  std::vector<double> lambdas, weights;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      lambdas.push_back(lo + (p + 0.5) * w + 0.5 * w * rule.nodes[i]);
      weights.push_back(0.5 * w * rule.weights[i]);
    }
  const SpectralDensity d = spectral_density(pot, lambdas, opts, threads);
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    out.lhs += weights[i] * log_density(d.densities[i], xi, lambdas[i], 1.0);
  return out;
}

double szego_explicit_bound(std::pair<double, double> interval, double rhs_l2) {
  const double len = interval.second - interval.first;
  return len * std::log(1.0 / kPi) - 2.0 * len * std::log(2.0) - kPi * rhs_l2;
}

AsymptoticCheck f2_asymptotic_check(const MatrixPotential& pot, double y,
                                    const SolverOptions& opts) {
  if (!(y > 0.0)) throw InvalidArgument("f2_asymptotic_check: y must be positive");
  const int m = pot.size();
  const Complex lambda(0.0, y);
  const CMatrix f = jost_at_zero(pot, lambda, opts);
  AsymptoticCheck out;
  out.measured = 2.0 * 1i * lambda * (f.bottomRows(m) - CMatrix::Identity(m, m));
  out.predicted = -pot.abs_g_squared_integral();
  const double scale = out.predicted.norm();
  const double diff = (out.measured - out.predicted).norm();
  out.relative_error = scale > 0.0 ? diff / scale : diff;
  return out;
}

}  // namespace diracac::dirac1d
