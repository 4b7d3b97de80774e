#pragma once

#include "diracac/dirac1d.hpp"
#include "diracac/grid.hpp"
#include "diracac/potential.hpp"
#include "diracac/types.hpp"

#include <Eigen/Dense>

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace diracac::partialwave {

using Vec3 = Eigen::Vector3d;
using Spinor = Eigen::Vector2cd;

// Eigen-channel of the spin-orbit operator s = 1 + sigma . L on [L^2(S^2)]^2.
struct AngularChannel {
  int index = 0;     // 1-based position in the channel ordering
  int kappa = 0;     // eigenvalue of s
  int l = 0;         // orbital angular momentum
  double j = 0.5;    // total angular momentum l +- 1/2
  double mj = 0.5;   // magnetic label
};

// Channels ordered by |kappa|, positive kappa first, then mj descending.
// kappa > 0: l = kappa - 1, j = l + 1/2; kappa < 0: l = -kappa, j = l - 1/2.
std::vector<AngularChannel> channel_spectrum(int n_max);

// Y_l^m with the Condon-Shortley phase, orthonormal on the unit sphere.
Complex spherical_harmonic(int l, int m, double theta, double phi);

// Spherical spinor of the channel at (theta, phi).
Spinor spinor(const AngularChannel& ch, double theta, double phi);

// Dense oracle for s: the matrix of 1 + sigma . L in the basis
// |l, m_l> (x) |up/down> for l <= l_max, ordered by l, then m_l ascending,
// then spin up before down.
CMatrix spin_orbit_matrix(int l_max);
// Coefficients of the channel spinor in the basis above.
CVector spinor_coefficients(const AngularChannel& ch, int l_max);

//------------------------------------------------------------------------------
// Real scalar potential v(x) of the 3D operator with coupling V = v beta.
struct ScalarPotential3D {
  std::string name;
  std::function<double(const Vec3&)> v;
  double c_v = 0.0;        // amplitude bound
  double epsilon = 0.1;    // decay exponent beyond 1/2
  bool annulus_zero = false;          // v = 0 on 1 < |x| < 2
  bool radial = false;                // v depends on |x| only
  std::function<double(double)> profile;  // v as a function of |x| when radial
  std::vector<double> jump_radii;         // |x| values where v may jump

  double operator()(const Vec3& x) const { return v(x); }
};

namespace potentials3d {

ScalarPotential3D zero();
// c_v (|x| + 1)^(-1/2 - epsilon), set to zero on 1 < |x| < 2 when
// annulus_zero is true.
ScalarPotential3D power_decay(double c_v, double epsilon, bool annulus_zero = true);
// c_v (x_3 / |x|) (|x| + 1)^(-exponent) on |x| >= 2 (zero inside).
ScalarPotential3D angular_modulated(double c_v, double exponent);
// c_v (1 + modulation x_3 / |x|) (|x| + 1)^(-1/2 - epsilon), zero on
// 1 < |x| < 2. Couples channels for modulation != 0.
ScalarPotential3D modulated_power_decay(double c_v, double epsilon, double modulation = 0.5);
// c_v (|x| + 1)^(-1/2 - epsilon) times a C-infinity ramp from 0 at
// |x| = inner to 1 at |x| = outer (no jumps).
ScalarPotential3D smooth_power_decay(double c_v, double epsilon, double inner = 0.5,
                                     double outer = 1.5);
// c_v times a C-infinity bump on lo < |x| < hi.
ScalarPotential3D radial_bump(double c_v, double lo, double hi);
// v set to zero on |x| < radius.
ScalarPotential3D exterior(const ScalarPotential3D& v, double radius);

}  // namespace potentials3d

//------------------------------------------------------------------------------
struct CouplingOptions {
  int initial_order = 8;      // Gauss-Legendre points in cos(theta)
  int max_order = 256;
  double converge_tol = 1e-8;  // successive doubling agreement
  double fail_tol = 1e-6;      // disagreement left at max_order that raises
};

// b_ij(r) = -integral over the unit sphere of v((r + 1) tau) psi_i^* psi_j,
// product Gauss-Legendre in cos(theta) times uniform in phi, order doubled
// until successive values agree. The result is symmetrized.
CMatrix couple_at(const ScalarPotential3D& v,
                  const std::vector<AngularChannel>& channels, double r,
                  const CouplingOptions& opts = {}, Side side = Side::Right);
std::vector<CMatrix> couple_potential(const ScalarPotential3D& v,
                                      const std::vector<AngularChannel>& channels,
                                      const RadialGrid& grid,
                                      const CouplingOptions& opts = {});

// Per-r quadrature of the integral of v^2((r + 1) tau) |psi_1|^2 over the
// sphere, i.e. the largest possible ||b(r) e1||^2.
double coupling_column_bound_at(const ScalarPotential3D& v, double r,
                                const CouplingOptions& opts = {});

struct TruncatedSystem {
  struct Segment {
    std::vector<double> knots;  // first and last are jumps or grid ends
    std::vector<CMatrix> b;     // one-sided values at the segment ends
  };

  int n = 0;
  std::vector<AngularChannel> channels;
  RadialGrid grid;
  std::vector<CMatrix> b;      // P_n b P_n at the grid nodes
  std::vector<double> a_diag;  // kappa_(k), with a_n(r) = diag(kappa) / (r + 1)
  std::vector<Segment> segments;

  CMatrix a_at(double r) const;
  // b_n alone as a canonical potential (a = 0), splined between jumps.
  MatrixPotential b_potential() const;
  // Canonical-system potential on [0, r_max]: a_n exactly, b_n splined.
  MatrixPotential to_potential() const;
};

// Builds the full coupling for `channels` on `grid` and keeps everything.
TruncatedSystem build_system(const ScalarPotential3D& v, int n_channels,
                             const RadialGrid& grid, const CouplingOptions& opts = {});

// Leading n x n block of a larger system (P_n b P_n and its a_n).
TruncatedSystem truncate(const TruncatedSystem& full, int n);
std::vector<CMatrix> truncate(const std::vector<CMatrix>& b, int n);

// integral over [0, inf) of ||a_n(r) e_k||^2 = kappa_k^2 / (r + 1)^2, by
// quadrature on [0, r_max] plus the closed-form tail kappa^2 / (r_max + 1).
double a_channel_l2(const TruncatedSystem& sys, int k = 0);
// integral over [0, r_max] of ||b_n(r) e1||^2.
double b_column_l2(const TruncatedSystem& sys);
// integral over [0, r_max] of the sphere integral of v^2((r + 1) tau) |psi_1|^2,
// an upper bound for b_column_l2 at every n.
double coupling_bound_l2(const ScalarPotential3D& v, double r_max,
                         const CouplingOptions& opts = {});

// (cos(lambda r) + sin(lambda r) / lambda,
//  r cos(lambda r) / (lambda (r + 1)) - sin(lambda r) (1 + 1 / (lambda^2 (r + 1)))).
std::pair<double, double> reference_eigenfunctions(double lambda, double r);

//------------------------------------------------------------------------------
// Radial test element f(x) = (f(|x|), 0, 0, 0), f supported in (1, 2).
struct TestElement {
  std::function<double(double)> f;  // f(|x|)
  double lo = 1.0, hi = 2.0;        // support of f

  // Phi(r) = (r + 1) f(r + 1), zero outside (0, 1).
  double phi(double r) const;
  // integral of Phi^2 over [0, 1].
  double norm_squared() const;
};

// C-infinity bump on (lo, hi) inside (1, 2).
TestElement bump_test_element(double lo = 1.1, double hi = 1.9);

// rho(lambda) = integral_0^1 Phi(r) (cos(lambda r) + sin(lambda r) / lambda) dr;
// series in lambda below |lambda| = 1e-6.
double rho_overlap(const TestElement& test, double lambda);

struct ChannelMeasure {
  int n = 0;
  std::vector<double> lambdas;
  std::vector<double> mu_prime;  // |rho|^2 (sigma_n' e1, e1)
};

struct MeasureOptions {
  double r_max = 60.0;
  double grid_step = 0.05;  // radial sampling of b
  // RK4 route: Picard costs about ten times more at n = 8, r_max = 60.
  dirac1d::SolverOptions solver{.route = dirac1d::JostRoute::Ode};
  CouplingOptions coupling{};
  int threads = 1;
};

ChannelMeasure test_element_measure(const TestElement& test,
                                    const ScalarPotential3D& v, int n,
                                    const std::vector<double>& lambdas,
                                    const MeasureOptions& opts = {});
// Same, reusing an existing (larger) system.
ChannelMeasure test_element_measure(const TestElement& test,
                                    const TruncatedSystem& full, int n,
                                    const std::vector<double>& lambdas,
                                    const MeasureOptions& opts = {});

// integral over the interval of ln mu_n' for each n (Gauss-Legendre panels).
std::vector<double> entropy_uniformity(const TestElement& test,
                                       const ScalarPotential3D& v,
                                       std::pair<double, double> interval,
                                       const std::vector<int>& n_list,
                                       const MeasureOptions& opts = {},
                                       double panel = 0.5, int nodes = 8);

}  // namespace diracac::partialwave
