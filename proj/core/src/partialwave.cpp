#include "diracac/partialwave.hpp"

#include "diracac/linalg.hpp"
#include "diracac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace diracac::partialwave {

namespace {

double sign_power(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// C-infinity step from 0 at t <= 0 to 1 at t >= 1.
double smooth_ramp(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double p = std::exp(-1.0 / t), q = std::exp(-1.0 / (1.0 - t));
  return p / (p + q);
}

double smooth_bump(double x, double lo, double hi) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  const double u = (x - mid) / half;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

ScalarPotential3D make_radial(std::string name, std::function<double(double)> profile,
                              double c_v, double epsilon, bool annulus_zero,
                              std::vector<double> jumps) {
  ScalarPotential3D p;
  p.name = std::move(name);
  p.c_v = c_v;
  p.epsilon = epsilon;
  p.annulus_zero = annulus_zero;
  p.radial = true;
  p.profile = profile;
  p.jump_radii = std::move(jumps);
  p.v = [profile](const Vec3& x) { return profile(x.norm()); };
  return p;
}

// Sphere product rule: Gauss-Legendre in cos(theta), 2 * order points in phi.
struct SphereRule {
  std::vector<double> theta, phi, weight;
};

SphereRule sphere_rule(int order) {
  SphereRule rule;
  const auto& gl = quad::gauss_legendre(order);
  const int nphi = 2 * order;
  for (int i = 0; i < order; ++i)
    for (int k = 0; k < nphi; ++k) {
      rule.theta.push_back(std::acos(gl.nodes[i]));
      rule.phi.push_back(2.0 * kPi * k / nphi);
      rule.weight.push_back(gl.weights[i] * 2.0 * kPi / nphi);
    }
  return rule;
}

// Spinor components of every channel on a sphere rule.
struct SpinorTable {
  SphereRule rule;
  std::vector<Vec3> directions;
  CMatrix up, down;  // points x channels
};

SpinorTable spinor_table(const std::vector<AngularChannel>& channels, int order) {
  SpinorTable t;
  t.rule = sphere_rule(order);
  const std::size_t q = t.rule.weight.size();
  const auto n = static_cast<Eigen::Index>(channels.size());
  t.up.resize(static_cast<Eigen::Index>(q), n);
  t.down.resize(static_cast<Eigen::Index>(q), n);
  t.directions.resize(q);
  for (std::size_t p = 0; p < q; ++p) {
    const double th = t.rule.theta[p], ph = t.rule.phi[p];
    t.directions[p] = Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                           std::cos(th));
    for (Eigen::Index c = 0; c < n; ++c) {
      const Spinor s = spinor(channels[static_cast<std::size_t>(c)], th, ph);
      t.up(static_cast<Eigen::Index>(p), c) = s(0);
      t.down(static_cast<Eigen::Index>(p), c) = s(1);
    }
  }
  return t;
}

CMatrix coupling_on_table(const ScalarPotential3D& v, const SpinorTable& t,
                          double radius) {
  const auto q = static_cast<Eigen::Index>(t.rule.weight.size());
  Eigen::VectorXd wv(q);
  for (Eigen::Index p = 0; p < q; ++p)
    wv(p) = t.rule.weight[static_cast<std::size_t>(p)] *
            v(radius * t.directions[static_cast<std::size_t>(p)]);
  const CMatrix b = -(t.up.adjoint() * wv.asDiagonal() * t.up +
                      t.down.adjoint() * wv.asDiagonal() * t.down);
  return linalg::hermitian_part(b);
}

// Sphere radius for r, nudged to the requested side of a jump.
double shifted_radius(double r, Side side) {
  const double rho = r + 1.0;
  return side == Side::Right ? rho * (1.0 + 1e-13) : rho * (1.0 - 1e-13);
}

class AdaptiveCoupling {
 public:
  AdaptiveCoupling(const ScalarPotential3D& v, std::vector<AngularChannel> channels,
                   const CouplingOptions& opts)
      : v_(v), channels_(std::move(channels)), opts_(opts) {}

  CMatrix operator()(double r, Side side) {
    const double radius = shifted_radius(r, side);
    int order = opts_.initial_order;
    CMatrix prev = coupling_on_table(v_, table(order), radius);
    double change = 0.0;
    while (order < opts_.max_order) {
      order *= 2;
      CMatrix next = coupling_on_table(v_, table(order), radius);
      change = (next - prev).cwiseAbs().maxCoeff();
      prev = std::move(next);
      if (change < opts_.converge_tol) return prev;
    }
    if (change > opts_.fail_tol) {
      std::ostringstream os;
      os << "couple_potential: sphere quadrature did not converge at r = " << r
         << " (last change " << change << ")";
      throw QuadratureError(change, os.str());
    }
    return prev;
  }

 private:
  const SpinorTable& table(int order) {
    auto it = tables_.find(order);
    if (it == tables_.end()) it = tables_.emplace(order, spinor_table(channels_, order)).first;
    return it->second;
  }

  const ScalarPotential3D& v_;
  std::vector<AngularChannel> channels_;
  CouplingOptions opts_;
  std::map<int, SpinorTable> tables_;
};

// r values in (0, r_max) where b may jump.
std::vector<double> jump_points(const ScalarPotential3D& v, double r_max) {
  std::vector<double> out;
  for (double rho : v.jump_radii) {
    const double r = rho - 1.0;
    if (r > 1e-12 && r < r_max - 1e-12) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

//------------------------------------------------------------------------------
std::vector<AngularChannel> channel_spectrum(int n_max) {
  if (n_max < 1) throw InvalidArgument("channel_spectrum: n_max must be >= 1");
  std::vector<AngularChannel> out;
  for (int k = 1; static_cast<int>(out.size()) < n_max; ++k) {
    for (int kappa : {k, -k}) {
      const int l = kappa > 0 ? kappa - 1 : -kappa;
      const double j = kappa > 0 ? l + 0.5 : l - 0.5;
      for (double mj = j; mj >= -j - 1e-12; mj -= 1.0) {
        if (static_cast<int>(out.size()) == n_max) return out;
        out.push_back({static_cast<int>(out.size()) + 1, kappa, l, j, mj});
      }
    }
  }
  return out;
}

Complex spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) return 0.0;
  if (m < 0) return sign_power(-m) * std::conj(spherical_harmonic(l, -m, theta, phi));
  return std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(m), theta) *
         std::exp(Complex(0.0, m * phi));
}

Spinor spinor(const AngularChannel& ch, double theta, double phi) {
  const int l = ch.l;
  const double m = ch.mj;
  const int m_up = static_cast<int>(std::lround(m - 0.5));
  const int m_dn = static_cast<int>(std::lround(m + 0.5));
  double c_up, c_dn;
  if (ch.kappa > 0) {  // j = l + 1/2
    c_up = std::sqrt((l + m + 0.5) / (2.0 * l + 1.0));
    c_dn = std::sqrt((l - m + 0.5) / (2.0 * l + 1.0));
  } else {  // j = l - 1/2
    c_up = -std::sqrt((l - m + 0.5) / (2.0 * l + 1.0));
    c_dn = std::sqrt((l + m + 0.5) / (2.0 * l + 1.0));
  }
  Spinor s;
  s(0) = c_up * spherical_harmonic(l, m_up, theta, phi);
  s(1) = c_dn * spherical_harmonic(l, m_dn, theta, phi);
  return s;
}

namespace {

Eigen::Index basis_index(int l, int ml, int spin_down) {
  // l^2 states with smaller l, each with two spins.
  return 2 * (static_cast<Eigen::Index>(l) * l + (ml + l)) + spin_down;
}

}  // namespace

CMatrix spin_orbit_matrix(int l_max) {
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(l_max + 1) * (l_max + 1);
  CMatrix s = CMatrix::Identity(dim, dim);
  for (int l = 0; l <= l_max; ++l)
    for (int ml = -l; ml <= l; ++ml) {
      // sigma_z L_z
      s(basis_index(l, ml, 0), basis_index(l, ml, 0)) += static_cast<double>(ml);
      s(basis_index(l, ml, 1), basis_index(l, ml, 1)) -= static_cast<double>(ml);
      // sigma_+ L_- : |l, ml, down> -> |l, ml - 1, up>
      if (ml > -l) {
        const double c = std::sqrt(static_cast<double>(l * (l + 1) - ml * (ml - 1)));
        s(basis_index(l, ml - 1, 0), basis_index(l, ml, 1)) += c;
      }
      // sigma_- L_+ : |l, ml, up> -> |l, ml + 1, down>
      if (ml < l) {
        const double c = std::sqrt(static_cast<double>(l * (l + 1) - ml * (ml + 1)));
        s(basis_index(l, ml + 1, 1), basis_index(l, ml, 0)) += c;
      }
    }
  return s;
}

CVector spinor_coefficients(const AngularChannel& ch, int l_max) {
  if (ch.l > l_max) throw InvalidArgument("spinor_coefficients: l exceeds l_max");
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(l_max + 1) * (l_max + 1);
  CVector c = CVector::Zero(dim);
  const int l = ch.l;
  const double m = ch.mj;
  const int m_up = static_cast<int>(std::lround(m - 0.5));
  const int m_dn = static_cast<int>(std::lround(m + 0.5));
  double c_up, c_dn;
  if (ch.kappa > 0) {
    c_up = std::sqrt((l + m + 0.5) / (2.0 * l + 1.0));
    c_dn = std::sqrt((l - m + 0.5) / (2.0 * l + 1.0));
  } else {
    c_up = -std::sqrt((l - m + 0.5) / (2.0 * l + 1.0));
    c_dn = std::sqrt((l + m + 0.5) / (2.0 * l + 1.0));
  }
  if (std::abs(m_up) <= l) c(basis_index(l, m_up, 0)) = c_up;
  if (std::abs(m_dn) <= l) c(basis_index(l, m_dn, 1)) = c_dn;
  return c;
}

//------------------------------------------------------------------------------
namespace potentials3d {

ScalarPotential3D zero() {
  return make_radial("zero", [](double) { return 0.0; }, 0.0, 0.1, true, {});
}

ScalarPotential3D power_decay(double c_v, double epsilon, bool annulus_zero) {
  const double p = 0.5 + epsilon;
  auto profile = [c_v, p, annulus_zero](double rho) {
    if (annulus_zero && rho > 1.0 && rho < 2.0) return 0.0;
    return c_v * std::pow(rho + 1.0, -p);
  };
  std::vector<double> jumps;
  if (annulus_zero) jumps = {1.0, 2.0};
  return make_radial("power-decay", profile, c_v, epsilon, annulus_zero, jumps);
}

ScalarPotential3D angular_modulated(double c_v, double exponent) {
  ScalarPotential3D p;
  p.name = "angular-modulated";
  p.c_v = c_v;
  p.epsilon = exponent - 0.5;
  p.annulus_zero = true;
  p.radial = false;
  p.jump_radii = {2.0};
  p.v = [c_v, exponent](const Vec3& x) {
    const double rho = x.norm();
    if (rho < 2.0) return 0.0;
    return c_v * (x(2) / rho) * std::pow(rho + 1.0, -exponent);
  };
  return p;
}

ScalarPotential3D modulated_power_decay(double c_v, double epsilon, double modulation) {
  if (std::abs(modulation) > 1.0)
    throw InvalidArgument("modulated_power_decay: |modulation| must be at most 1");
  ScalarPotential3D p;
  p.name = "modulated-power-decay";
  p.c_v = c_v * (1.0 + std::abs(modulation));
  p.epsilon = epsilon;
  p.annulus_zero = true;
  p.radial = modulation == 0.0;
  p.jump_radii = {1.0, 2.0};
  p.v = [c_v, epsilon, modulation](const Vec3& x) {
    const double rho = x.norm();
    if (rho > 1.0 && rho < 2.0) return 0.0;
    const double c = rho > 0.0 ? x(2) / rho : 0.0;
    return c_v * (1.0 + modulation * c) * std::pow(rho + 1.0, -0.5 - epsilon);
  };
  if (p.radial)
    p.profile = [c_v, epsilon](double rho) {
      return rho > 1.0 && rho < 2.0 ? 0.0 : c_v * std::pow(rho + 1.0, -0.5 - epsilon);
    };
  return p;
}

ScalarPotential3D smooth_power_decay(double c_v, double epsilon, double inner,
                                     double outer) {
  const double p = 0.5 + epsilon;
  auto profile = [c_v, p, inner, outer](double rho) {
    return c_v * std::pow(rho + 1.0, -p) * smooth_ramp((rho - inner) / (outer - inner));
  };
  return make_radial("smooth-power-decay", profile, c_v, epsilon, false, {});
}

ScalarPotential3D radial_bump(double c_v, double lo, double hi) {
  auto profile = [c_v, lo, hi](double rho) { return c_v * smooth_bump(rho, lo, hi); };
  return make_radial("radial-bump", profile, c_v, 0.0, lo >= 2.0, {});
}

ScalarPotential3D exterior(const ScalarPotential3D& v, double radius) {
  ScalarPotential3D out = v;
  out.name = v.name + "-exterior";
  out.v = [f = v.v, radius](const Vec3& x) { return x.norm() < radius ? 0.0 : f(x); };
  if (v.profile)
    out.profile = [f = v.profile, radius](double rho) { return rho < radius ? 0.0 : f(rho); };
  out.jump_radii.push_back(radius);
  std::sort(out.jump_radii.begin(), out.jump_radii.end());
  if (radius >= 2.0) out.annulus_zero = true;
  return out;
}

}  // namespace potentials3d

//------------------------------------------------------------------------------
CMatrix couple_at(const ScalarPotential3D& v, const std::vector<AngularChannel>& channels,
                  double r, const CouplingOptions& opts, Side side) {
  AdaptiveCoupling coupling(v, channels, opts);
  return coupling(r, side);
}

std::vector<CMatrix> couple_potential(const ScalarPotential3D& v,
                                      const std::vector<AngularChannel>& channels,
                                      const RadialGrid& grid, const CouplingOptions& opts) {
  AdaptiveCoupling coupling(v, channels, opts);
  std::vector<CMatrix> out;
  out.reserve(grid.size());
  for (double r : grid.nodes()) out.push_back(coupling(r, Side::Right));
  return out;
}

double coupling_column_bound_at(const ScalarPotential3D& v, double r,
                                const CouplingOptions& opts) {
  const double radius = r + 1.0;
  auto at = [&](int order) {
    const SphereRule rule = sphere_rule(order);
    double s = 0.0;
    for (std::size_t p = 0; p < rule.weight.size(); ++p) {
      const double th = rule.theta[p], ph = rule.phi[p];
      const Vec3 x = radius * Vec3(std::sin(th) * std::cos(ph),
                                   std::sin(th) * std::sin(ph), std::cos(th));
      const double val = v(x);
      s += rule.weight[p] * val * val;
    }
    return s / (4.0 * kPi);  // |psi_1|^2 = 1 / (4 pi)
  };
  int order = opts.initial_order;
  double prev = at(order);
  while (order < opts.max_order) {
    order *= 2;
    const double next = at(order);
    const bool done = std::abs(next - prev) < opts.converge_tol;
    prev = next;
    if (done) break;
  }
  return prev;
}

CMatrix TruncatedSystem::a_at(double r) const {
  CMatrix a = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) a(k, k) = a_diag[static_cast<std::size_t>(k)] / (r + 1.0);
  return a;
}

MatrixPotential TruncatedSystem::b_potential() const {
  std::vector<MatrixPotential::Segment> segs;
  for (const auto& s : segments) {
    MatrixPotential::Segment seg;
    seg.knots = s.knots;
    seg.b = s.b;
    seg.a.assign(s.knots.size(), CMatrix::Zero(n, n));
    segs.push_back(std::move(seg));
  }
  return MatrixPotential::from_segments(n, std::move(segs));
}

MatrixPotential TruncatedSystem::to_potential() const {
  CMatrix kappa = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) kappa(k, k) = a_diag[static_cast<std::size_t>(k)];
  const MatrixPotential a = MatrixPotential::from_terms(
      n, {{profiles::coulomb_tail(grid.r_max()), kappa, CMatrix::Zero(n, n)}});
  return MatrixPotential::sum(a, b_potential());
}

TruncatedSystem build_system(const ScalarPotential3D& v, int n_channels,
                             const RadialGrid& grid, const CouplingOptions& opts) {
  TruncatedSystem sys;
  sys.n = n_channels;
  sys.channels = channel_spectrum(n_channels);
  sys.grid = grid;
  for (const auto& c : sys.channels) sys.a_diag.push_back(c.kappa);
  AdaptiveCoupling coupling(v, sys.channels, opts);
  sys.b.reserve(grid.size());
  for (double r : grid.nodes()) sys.b.push_back(coupling(r, Side::Right));

  std::vector<double> edges{0.0};
  for (double j : jump_points(v, grid.r_max())) edges.push_back(j);
  edges.push_back(grid.r_max());
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double lo = edges[e], hi = edges[e + 1];
    TruncatedSystem::Segment seg;
    seg.knots.push_back(lo);
    seg.b.push_back(coupling(lo, Side::Right));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = grid.node(i);
      if (r > lo + 1e-12 && r < hi - 1e-12) {
        seg.knots.push_back(r);
        seg.b.push_back(sys.b[i]);
      }
    }
    seg.knots.push_back(hi);
    seg.b.push_back(coupling(hi, Side::Left));
    sys.segments.push_back(std::move(seg));
  }
  return sys;
}

std::vector<CMatrix> truncate(const std::vector<CMatrix>& b, int n) {
  std::vector<CMatrix> out;
  out.reserve(b.size());
  for (const auto& m : b) {
    if (n > m.rows()) throw InvalidArgument("truncate: n exceeds the channel count");
    out.push_back(m.topLeftCorner(n, n));
  }
  return out;
}

TruncatedSystem truncate(const TruncatedSystem& full, int n) {
  if (n < 1 || n > full.n) throw InvalidArgument("truncate: need 1 <= n <= full size");
  TruncatedSystem t;
  t.n = n;
  t.channels.assign(full.channels.begin(), full.channels.begin() + n);
  t.grid = full.grid;
  t.b = truncate(full.b, n);
  t.a_diag.assign(full.a_diag.begin(), full.a_diag.begin() + n);
  for (const auto& s : full.segments) t.segments.push_back({s.knots, truncate(s.b, n)});
  return t;
}

double a_channel_l2(const TruncatedSystem& sys, int k) {
  const double kappa = sys.a_diag.at(static_cast<std::size_t>(k));
  const double r_max = sys.grid.r_max();
  // Log-spaced panels resolve the (r + 1)^-2 decay.
  double body = 0.0;
  double lo = 0.0;
  for (double hi = 1.0;; hi *= 2.0) {
    const double top = std::min(hi, r_max);
    body += quad::integrate([&](double r) { return kappa * kappa / ((r + 1) * (r + 1)); },
                            lo, top, 4, 20);
    if (top >= r_max) break;
    lo = top;
  }
  return body + kappa * kappa / (r_max + 1.0);
}

double b_column_l2(const TruncatedSystem& sys) {
  return sys.b_potential().column_l2(CVector::Unit(sys.n, 0));
}

double coupling_bound_l2(const ScalarPotential3D& v, double r_max,
                         const CouplingOptions& opts) {
  std::vector<double> edges{0.0};
  for (double j : jump_points(v, r_max)) edges.push_back(j);
  edges.push_back(r_max);
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double lo = edges[e], hi = edges[e + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / 0.5)));
    total += quad::integrate(
        [&](double r) { return coupling_column_bound_at(v, r, opts); }, lo, hi, panels, 8);
  }
  return total;
}

std::pair<double, double> reference_eigenfunctions(double lambda, double r) {
  if (lambda == 0.0) throw SingularParameter("reference_eigenfunctions: lambda = 0");
  const double c = std::cos(lambda * r), s = std::sin(lambda * r);
  return {c + s / lambda,
          r * c / (lambda * (r + 1.0)) - s * (1.0 + 1.0 / (lambda * lambda * (r + 1.0)))};
}

//------------------------------------------------------------------------------
double TestElement::phi(double r) const {
  const double rho = r + 1.0;
  if (rho <= lo || rho >= hi) return 0.0;
  return rho * f(rho);
}

double TestElement::norm_squared() const {
  return quad::integrate([this](double r) { return phi(r) * phi(r); }, lo - 1.0, hi - 1.0,
                         16, 24);
}

TestElement bump_test_element(double lo, double hi) {
  if (!(lo >= 1.0 && hi <= 2.0 && lo < hi))
    throw InvalidArgument("bump_test_element: support must lie in (1, 2)");
  TestElement t;
  t.lo = lo;
  t.hi = hi;
  t.f = [lo, hi](double rho) { return smooth_bump(rho, lo, hi); };
  return t;
}

double rho_overlap(const TestElement& test, double lambda) {
  const bool series = std::abs(lambda) < 1e-6;
  auto kernel = [lambda, series](double r) {
    if (series) {
      const double l2 = lambda * lambda;
      return 1.0 - l2 * r * r / 2.0 + r - l2 * r * r * r / 6.0;
    }
    return std::cos(lambda * r) + std::sin(lambda * r) / lambda;
  };
  const int panels = std::max(16, static_cast<int>(std::ceil(std::abs(lambda) * 2.0)));
  return quad::integrate([&](double r) { return test.phi(r) * kernel(r); },
                         test.lo - 1.0, test.hi - 1.0, panels, 24);
}

ChannelMeasure test_element_measure(const TestElement& test, const TruncatedSystem& full,
                                    int n, const std::vector<double>& lambdas,
                                    const MeasureOptions& opts) {
  const TruncatedSystem sys = n == full.n ? full : truncate(full, n);
  const MatrixPotential pot = sys.to_potential();
  const auto density = dirac1d::spectral_density(pot, lambdas, opts.solver, opts.threads);
  ChannelMeasure out{n, lambdas, std::vector<double>(lambdas.size())};
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double rho = rho_overlap(test, lambdas[i]);
    out.mu_prime[i] = rho * rho * density.densities[i](0, 0).real();
  }
  return out;
}

ChannelMeasure test_element_measure(const TestElement& test, const ScalarPotential3D& v,
                                    int n, const std::vector<double>& lambdas,
                                    const MeasureOptions& opts) {
  if (!v.annulus_zero)
    throw InvalidArgument("test_element_measure: v must vanish on 1 < |x| < 2");
  const auto grid = RadialGrid::uniform(opts.r_max, opts.grid_step);
  return test_element_measure(test, build_system(v, n, grid, opts.coupling), n, lambdas,
                              opts);
}

std::vector<double> entropy_uniformity(const TestElement& test, const ScalarPotential3D& v,
                                       std::pair<double, double> interval,
                                       const std::vector<int>& n_list,
                                       const MeasureOptions& opts, double panel,
                                       int nodes) {
  if (!v.annulus_zero)
    throw InvalidArgument("entropy_uniformity: v must vanish on 1 < |x| < 2");
  const auto [lo, hi] = interval;
  if (hi < lo) throw InvalidArgument("entropy_uniformity: empty interval");
  std::vector<double> out(n_list.size(), 0.0);
  if (hi == lo || n_list.empty()) return out;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel)));
  const double w = (hi - lo) / panels;
  const auto& rule = quad::gauss_legendre(nodes);
  std::vector<double> lambdas, weights;
  for (int p = 0; p < panels; ++p)
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      lambdas.push_back(lo + (p + 0.5) * w + 0.5 * w * rule.nodes[i]);
      weights.push_back(0.5 * w * rule.weights[i]);
    }
  const int n_max = *std::max_element(n_list.begin(), n_list.end());
  const auto grid = RadialGrid::uniform(opts.r_max, opts.grid_step);
  const TruncatedSystem full = build_system(v, n_max, grid, opts.coupling);
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    const auto mu = test_element_measure(test, full, n_list[k], lambdas, opts);
    double s = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      if (!(mu.mu_prime[i] >= 1e-300)) {
        std::ostringstream os;
        os << "entropy_uniformity: mu' = " << mu.mu_prime[i] << " at lambda = " << lambdas[i];
        throw LogSingularity(lambdas[i], os.str());
      }
      s += weights[i] * std::log(mu.mu_prime[i]);
    }
    out[k] = s;
  }
  return out;
}

}  // namespace diracac::partialwave
