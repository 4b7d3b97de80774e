#pragma once

#include "diracac/grid.hpp"
#include "diracac/potential.hpp"
#include "diracac/types.hpp"

#include <utility>
#include <vector>

namespace diracac::dirac1d {

// How solve_jost computes the Jost data.
enum class JostRoute {
  Auto,    // Picard on the Volterra system when |Im lambda| <= picard_max_im,
           // backward RK4 otherwise
  Picard,  // always iterate the Volterra system
  Ode,     // always integrate the reduced system backward
};

struct SolverOptions {
  double grid_step = 1e-2;        // output grid spacing when none is given
  double phase_step = 0.05;       // integrator substeps obey |lambda| h <= this
  double picard_tol = 1e-10;      // sup-norm change between Picard iterates
  int picard_max_iter = 200;
  double picard_max_im = 1.0;
  double max_condition = 1e12;    // for every matrix inversion
  JostRoute route = JostRoute::Auto;
};

struct RegularSolution {
  Complex lambda;
  RadialGrid grid;
  std::vector<CMatrix> phi;  // Phi(r_i, lambda)
  std::vector<CMatrix> psi;  // Psi(r_i, lambda)
};

struct JostSolution {
  Complex lambda;
  RadialGrid grid;
  double support_radius = 0.0;
  std::vector<CMatrix> f1_full, f2_full;  // F1, F2
  std::vector<CMatrix> f1_red, f2_red;    // e^{-i lambda r} F1, e^{-i lambda r} F2
  JostRoute route = JostRoute::Ode;       // route actually taken
  int iterations = 0;                     // Picard iterations (0 for the ODE route)
  double residual = 0.0;                  // last Picard change

  int size() const { return static_cast<int>(f1_full.front().rows()); }
  const CMatrix& f1_at_zero() const { return f1_full.front(); }
  const CMatrix& f2_at_zero() const { return f2_full.front(); }
};

struct ScatteringPair {
  Complex lambda;
  CMatrix A;
  CMatrix B;
};

struct SpectralDensity {
  std::vector<double> lambdas;
  std::vector<CMatrix> densities;  // sigma'(lambda_i)
};

struct ResolventKernelEntry {
  Complex lambda;
  double r = 0.0;
  double s = 0.0;
  CMatrix value;  // 2m x 2m
};

struct SzegoBound {
  double lhs = 0.0;     // integral over the interval of ln (sigma' xi, xi)
  double rhs_l2 = 0.0;  // integral of ||(b + i a) xi||^2
};

struct AsymptoticCheck {
  CMatrix measured;   // 2 i lambda (F2(0, lambda) - I) at lambda = i y
  CMatrix predicted;  // -integral of |b + i a|^2
  double relative_error = 0.0;  // Frobenius, relative to ||predicted||
};

//------------------------------------------------------------------------------
// Solutions.

// Y' = M Y with M = [[a, lambda - b], [-(lambda + b), -a]], Y(0) = (I, 0),
// by RK4 on the grid refined at breakpoints and to |lambda| h <= phase_step.
RegularSolution solve_regular(const MatrixPotential& pot, Complex lambda,
                              const RadialGrid& grid,
                              const SolverOptions& opts = {});

// Jost solution sampled on `grid` (any r_max; nodes beyond the support are
// filled with plane waves).
JostSolution solve_jost(const MatrixPotential& pot, Complex lambda,
                        const RadialGrid& grid, const SolverOptions& opts = {});

// Jost solution on a uniform grid of spacing opts.grid_step over [0, R].
JostSolution solve_jost(const MatrixPotential& pot, Complex lambda,
                        const SolverOptions& opts = {});

// Point evaluators: (Phi, Psi)(r) and (F1, F2)(r), each stacked as 2m x m.
CMatrix regular_at(const MatrixPotential& pot, Complex lambda, double r,
                   const SolverOptions& opts = {});
CMatrix jost_at(const MatrixPotential& pot, Complex lambda, double r,
                const SolverOptions& opts = {});

// (F1(0), F2(0)) stacked as 2m x m; the cheapest path to the scattering data.
CMatrix jost_at_zero(const MatrixPotential& pot, Complex lambda,
                     const SolverOptions& opts = {});

//------------------------------------------------------------------------------
// Scattering data and densities.

ScatteringPair scattering_coefficients(const JostSolution& jost);
ScatteringPair scattering_coefficients(Complex lambda, const CMatrix& f1_0,
                                       const CMatrix& f2_0);

// W = (F1* F2 - F2* F1)(0) / i - 2 I.
CMatrix wronskian_defect(const JostSolution& jost);
CMatrix wronskian_defect(const CMatrix& f1_0, const CMatrix& f2_0);

// 2 Im(lambda) * integral over [0, inf) of |f1 + i f2|^2 (matrix square,
// (f1 + i f2)* (f1 + i f2)). The part beyond the support is closed form.
CMatrix wronskian_integral(const JostSolution& jost);

// sigma'(lambda) = pi^{-1} F2^{-*}(0, lambda) F2^{-1}(0, lambda).
CMatrix density_at(const MatrixPotential& pot, double lambda,
                   const SolverOptions& opts = {});
SpectralDensity spectral_density(const MatrixPotential& pot,
                                 const std::vector<double>& lambdas,
                                 const SolverOptions& opts = {},
                                 int threads = 1);

// R_lambda(r, s). At r = s the two one-sided limits are averaged.
ResolventKernelEntry resolvent_kernel(const MatrixPotential& pot,
                                      Complex lambda, double r, double s,
                                      const SolverOptions& opts = {});

// Closed-form kernel of the free system.
CMatrix free_resolvent_kernel(int m, Complex lambda, double r, double s);

//------------------------------------------------------------------------------
// Entropy functionals.

// y^2 * integral of ln(pi (sigma' xi, xi)) / (y^2 + lambda^2) over the
// density nodes (trapezoid, Simpson when uniform with an odd count), plus the
// closed-form tail beyond the node range with sigma' = I / pi.
double entropy_lhs(const SpectralDensity& density, const CVector& xi, double y);

// lambdas covering [-20 y, 20 y] used by entropy_lhs callers.
std::vector<double> entropy_nodes(double y, double span_factor = 20.0,
                                  double spacing = 0.02);

// lhs by `nodes`-point Gauss-Legendre panels of width <= panel on the
// interval, rhs_l2 by quadrature of the potential.
SzegoBound szego_interval_bound(const MatrixPotential& pot, const CVector& xi,
                                std::pair<double, double> interval,
                                const SolverOptions& opts = {},
                                double panel = 0.5, int nodes = 12,
                                int threads = 1);

// Explicit lower bound for lhs: |D| ln(1/pi) - 2 |D| ln 2 - pi * rhs_l2,
// where |D| is the interval length.
double szego_explicit_bound(std::pair<double, double> interval, double rhs_l2);

AsymptoticCheck f2_asymptotic_check(const MatrixPotential& pot, double y,
                                    const SolverOptions& opts = {});

//------------------------------------------------------------------------------
// Integration mesh: anchors, breakpoints in (0, r_end), each interval split
// into equal substeps no longer than min(max_step, phase_step / |lambda|).
std::vector<double> integration_mesh(const std::vector<double>& anchors,
                                     const std::vector<double>& breakpoints,
                                     double r_end, Complex lambda,
                                     double phase_step, double max_step);

}  // namespace diracac::dirac1d
