#include "diracac/greens3d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace diracac::greens3d {

namespace {

const Complex kI(0.0, 1.0);

Matrix4 block(const Matrix2& tl, const Matrix2& tr, const Matrix2& bl, const Matrix2& br) {
  Matrix4 m;
  m << tl, tr, bl, br;
  return m;
}

double op_norm(const Matrix4& m) {
  return Eigen::JacobiSVD<Matrix4>(m).singularValues()(0);
}

void require_unit(const Vec3& g, const char* where) {
  if (std::abs(g.norm() - 1.0) > 1e-12)
    throw InvalidArgument(std::string(where) + ": gamma must be a unit vector");
}

}  // namespace

//------------------------------------------------------------------------------
Matrix2 pauli(int k) {
  Matrix2 s;
  switch (k) {
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -kI, kI, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default: throw InvalidArgument("pauli: k must be 1, 2 or 3");
  }
  return s;
}

Matrix4 alpha(int k) {
  const Matrix2 z = Matrix2::Zero();
  return block(z, pauli(k), pauli(k), z);
}

Matrix4 beta() {
  const Matrix2 id = Matrix2::Identity(), z = Matrix2::Zero();
  return block(id, z, z, -id);
}

Matrix4 alpha_dot(const Vec3& g) {
  const Matrix2 s = g(0) * pauli(1) + g(1) * pauli(2) + g(2) * pauli(3);
  const Matrix2 z = Matrix2::Zero();
  return block(z, s, s, z);
}

std::array<double, 3> clifford_identity_defects(const Vec3& gamma) {
  require_unit(gamma, "clifford_identity_defects");
  const Matrix4 a = alpha_dot(gamma);
  const Matrix4 id = Matrix4::Identity();
  const Matrix4 p = a + id;
  return {(a * a - id).norm(), (p * p - 2.0 * p).norm(), (p * beta() * p).norm()};
}

double anticommutator_defect() {
  double worst = (beta() * beta() - Matrix4::Identity()).norm();
  for (int k = 1; k <= 3; ++k) {
    worst = std::max(worst, (alpha(k) * beta() + beta() * alpha(k)).norm());
    for (int l = 1; l <= 3; ++l) {
      const Matrix4 target = (k == l ? 2.0 : 0.0) * Matrix4::Identity();
      worst = std::max(worst, (alpha(k) * alpha(l) + alpha(l) * alpha(k) - target).norm());
    }
  }
  return worst;
}

Quaternions quaternion_units() {
  return {-kI * pauli(1), -kI * pauli(2), -kI * pauli(3)};
}

double quaternion_defect() {
  const auto [i, j, k] = quaternion_units();
  const Matrix2 id = Matrix2::Identity();
  const Matrix2 checks[] = {i * i + id, j * j + id, k * k + id, i * j - k, j * k - i,
                            k * i - j, i * j + j * i, i * k + k * i, j * k + k * j};
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.cwiseAbs().maxCoeff());
  return worst;
}

//------------------------------------------------------------------------------
GreenEvaluation free_green(Complex lambda, const Vec3& x, const Vec3& s) {
  if (lambda.imag() < 0.0)
    throw InvalidArgument("free_green: Im lambda must be non-negative");
  const Vec3 d = x - s;
  const double t = d.norm();
  if (t == 0.0) throw SingularParameter("free_green: x = s");
  const Matrix4 ad = alpha_dot(d);
  GreenEvaluation g;
  g.lambda = lambda;
  g.x = x;
  g.s = s;
  g.value = (kI * ad / (t * t) + lambda * ad / t + lambda * Matrix4::Identity()) *
            (std::exp(kI * lambda * t) / (4.0 * kPi * t));
  return g;
}

double free_green_residual(Complex lambda, const Vec3& x, const Vec3& s, double h) {
  auto g = [&](const Vec3& p) { return free_green(lambda, p, s).value; };
  Matrix4 res = -lambda * g(x);
  for (int k = 0; k < 3; ++k) {
    const Vec3 e = h * Vec3::Unit(k);
    const Matrix4 dg = (-g(x + 2 * e) + 8.0 * g(x + e) - 8.0 * g(x - e) + g(x - 2 * e)) /
                       (12.0 * h);
    res += -kI * alpha(k + 1) * dg;
  }
  return res.norm();
}

//------------------------------------------------------------------------------
Matrix4 assemble_scaled(const Covariant& t, const Vec3& xhat) {
  const Matrix4 ax = alpha_dot(xhat);
  const Matrix4 b = beta();
  return t.a * Matrix4::Identity() + t.b * b + t.c * ax + t.d * (b * ax);
}

Matrix4 assemble(const Covariant& t, const Vec3& x) {
  const double r = x.norm();
  if (r == 0.0) throw SingularParameter("assemble: x = 0");
  return assemble_scaled(t, x / r) * (std::exp(-r) / (4.0 * kPi * r));
}

CovariantField free_field() {
  return [](double rho) { return Covariant{kI, 0.0, kI * (1.0 + 1.0 / rho), 0.0}; };
}

CovariantField radial_source_field(const std::function<double(double)>& g, double support) {
  if (!(support > 0.0)) throw InvalidArgument("radial_source_field: support must be positive");
  // U(r) = (1/r)[e^-r P(r) + sinh(r) Q(r)], P = int_0^r g s sinh s, Q = int_r^R g s e^-s.
  const int n = 400;
  const double h = support / n;
  std::vector<double> knots(n + 1), p(n + 1, 0.0), q(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) knots[i] = i * h;
  for (int i = 1; i <= n; ++i)
    p[i] = p[i - 1] + quad::integrate([&](double s) { return g(s) * s * std::sinh(s); },
                                      knots[i - 1], knots[i], 1, 12);
  for (int i = n - 1; i >= 0; --i)
    q[i] = q[i + 1] + quad::integrate([&](double s) { return g(s) * s * std::exp(-s); },
                                      knots[i], knots[i + 1], 1, 12);
  const double total = p[n];
  std::vector<Complex> a(n + 1), c(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double r = knots[i];
    // Scaled coefficients a = 4 pi r e^r (i U), c = 4 pi r e^r (-i U').
    if (i == 0) {
      a[i] = 0.0;
      c[i] = 0.0;
      continue;
    }
    const double u = (std::exp(-r) * p[i] + std::sinh(r) * q[i]) / r;
    const double du = -u / r + (-std::exp(-r) * p[i] + std::cosh(r) * q[i]) / r;
    a[i] = 4.0 * kPi * r * std::exp(r) * kI * u;
    c[i] = -4.0 * kPi * r * std::exp(r) * kI * du;
  }
  auto sa = std::make_shared<quad::CubicSpline>(knots, a);
  auto sc = std::make_shared<quad::CubicSpline>(knots, c);
  const Complex outer = 4.0 * kPi * kI * total;
  return [sa, sc, outer, support](double rho) {
    if (rho >= support) return Covariant{outer, 0.0, outer * (1.0 + 1.0 / rho), 0.0};
    return Covariant{(*sa)(rho), 0.0, (*sc)(rho), 0.0};
  };
}

//------------------------------------------------------------------------------
RadialTable::RadialTable(std::vector<double> nodes, std::vector<Covariant> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() != values_.size() || nodes_.size() < 2)
    throw InvalidArgument("RadialTable: need matching node and value lists");
  std::array<std::vector<Complex>, 4> comp;
  for (const auto& v : values_) {
    comp[0].push_back(v.a);
    comp[1].push_back(v.b);
    comp[2].push_back(v.c);
    comp[3].push_back(v.d);
  }
  for (int k = 0; k < 4; ++k) splines_[k] = quad::CubicSpline(nodes_, comp[k]);
}

Covariant RadialTable::operator()(double rho) const {
  const double t = std::clamp(rho, nodes_.front(), nodes_.back());
  return {splines_[0](t), splines_[1](t), splines_[2](t), splines_[3](t)};
}

std::vector<double> born_nodes(double table_radius) {
  std::vector<double> out;
  for (int i = 0; i <= 30; ++i) out.push_back(std::pow(10.0, -3.0 + 0.1 * i));
  for (double r = 1.25; r <= std::min(10.0, table_radius) + 1e-12; r += 0.25) out.push_back(r);
  for (double r = 11.0; r <= table_radius + 1e-12; r += 1.0) out.push_back(r);
  return out;
}

namespace {

// Scaled integral at one radius r in prolate coordinates u = rho + t,
// w = rho - t, with log maps toward the rho = 0 and t = 0 corners.
Covariant born_point(const std::function<double(double)>& v, const std::vector<double>& jumps,
                     const CovariantField& field, double r, int order) {
  std::vector<double> zedges{0.0};
  for (double z = 1e-9; z < 1.0; z *= 3.0) zedges.push_back(z);
  for (double z : {1.0, 2.0, 3.5, 5.5, 8.0, 11.0, 15.0, 20.0, 26.0, 34.0, 44.0})
    zedges.push_back(z);
  for (double j : jumps)
    for (double z : {2.0 * j - 2.0 * r, 2.0 * j})
      if (z > 0.0 && z < zedges.back()) zedges.push_back(z);
  std::sort(zedges.begin(), zedges.end());
  zedges.erase(std::unique(zedges.begin(), zedges.end()), zedges.end());

  const auto& rule = quad::gauss_legendre(order);
  const Complex g0 = kI / (4.0 * kPi);
  Complex sa = 0.0, sb = 0.0, sc = 0.0, sd = 0.0;

  auto accumulate = [&](double rho, double t, double weight) {
    const double vr = v(rho);
    if (vr == 0.0) return;
    const Covariant f = field(rho);
    const Complex g1 = kI * (1.0 + 1.0 / t) / (4.0 * kPi);
    const double c_sx = std::clamp((r * r + rho * rho - t * t) / (2.0 * r * rho), -1.0, 1.0);
    const double c_dx = std::clamp((r * r + t * t - rho * rho) / (2.0 * r * t), -1.0, 1.0);
    const double c_ds = std::clamp((r * r - rho * rho - t * t) / (2.0 * t * rho), -1.0, 1.0);
    const double w = weight * vr;
    sa += w * (g0 * f.b + g1 * f.d * c_ds);
    sb += w * (g0 * f.a - g1 * f.c * c_ds);
    sc += w * (g0 * f.d * c_sx + g1 * f.b * c_dx);
    sd += w * (g0 * f.c * c_sx - g1 * f.a * c_dx);
  };

  // Log-mapped Gauss-Legendre over [lo, hi] of a variable y (rho or t),
  // calling back with y and the weight for dw = 2 dy.
  auto log_panels = [&](double lo, double hi, double zw, auto&& body) {
    const double qa = std::log(lo), qb = std::log(hi);
    const int panels = std::max(1, static_cast<int>(std::ceil((qb - qa) / 1.5)));
    const double width = (qb - qa) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = qa + (p + 0.5) * width;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double y = std::exp(mid + 0.5 * width * rule.nodes[i]);
        body(y, zw * 2.0 * y * 0.5 * width * rule.weights[i]);
      }
    }
  };

  for (std::size_t e = 0; e + 1 < zedges.size(); ++e) {
    const double za = zedges[e], zb = zedges[e + 1];
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double z = 0.5 * (za + zb) + 0.5 * (zb - za) * rule.nodes[k];
      const double zw = std::exp(-z) * 0.5 * (zb - za) * rule.weights[k];
      const double u = r + z;
      std::vector<double> wcuts{-r, 0.0, r};
      for (double j : jumps) {
        const double wj = 2.0 * j - u;
        if (wj > -r && wj < r) wcuts.push_back(wj);
      }
      std::sort(wcuts.begin(), wcuts.end());
      for (std::size_t c = 0; c + 1 < wcuts.size(); ++c) {
        const double wa = wcuts[c], wb = wcuts[c + 1];
        if (wb - wa <= 0.0) continue;
        if (wb <= 0.0) {
          log_panels(0.5 * (u + wa), 0.5 * (u + wb), zw,
                     [&](double rho, double wt) { accumulate(rho, u - rho, wt); });
        } else {
          log_panels(0.5 * (u - wb), 0.5 * (u - wa), zw,
                     [&](double t, double wt) { accumulate(u - t, t, wt); });
        }
      }
    }
  }
  return {-kPi * sa, -kPi * sb, -kPi * sc, -kPi * sd};
}

// Two-step geometric ratio sqrt(norm_n / norm_{n-2}); single-step ratios of
// a divergent series can alternate below and above one.
class DivergenceWatch {
 public:
  explicit DivergenceWatch(double limit) : limit_(limit) {}
  // Returns the ratio once it has exceeded the limit twice in a row, else 0.
  double push(double norm) {
    norms_.push_back(norm);
    const std::size_t n = norms_.size();
    if (n < 3 || norms_[n - 3] == 0.0) return 0.0;
    const double q = std::sqrt(norm / norms_[n - 3]);
    rising_ = q > limit_ ? rising_ + 1 : 0;
    return rising_ >= 2 ? q : 0.0;
  }

 private:
  double limit_;
  std::vector<double> norms_;
  int rising_ = 0;
};

double scaled_norm(const Covariant& c) { return op_norm(assemble_scaled(c, Vec3::UnitZ())); }

double table_difference(const std::vector<Covariant>& x, const std::vector<Covariant>& y) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    diff = std::max({diff, std::abs(x[i].a - y[i].a), std::abs(x[i].b - y[i].b),
                     std::abs(x[i].c - y[i].c), std::abs(x[i].d - y[i].d)});
    scale = std::max({scale, std::abs(y[i].a), std::abs(y[i].b), std::abs(y[i].c),
                      std::abs(y[i].d)});
  }
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

RadialTable born_step(const ScalarPotential3D& v, const CovariantField& field,
                      const std::vector<double>& nodes, const BornOptions& opts) {
  if (!v.radial || !v.profile)
    throw InvalidArgument("born_step: the Born tables need a radial potential");
  auto pass = [&](int order) {
    std::vector<Covariant> out;
    out.reserve(nodes.size());
    for (double r : nodes) out.push_back(born_point(v.profile, v.jump_radii, field, r, order));
    return out;
  };
  int order = opts.initial_order;
  std::vector<Covariant> coarse = pass(order);
  double diff = 0.0;
  while (2 * order <= opts.max_order) {
    order *= 2;
    std::vector<Covariant> fine = pass(order);
    diff = table_difference(coarse, fine);
    if (diff < opts.quad_tol) return RadialTable(nodes, std::move(fine));
    coarse = std::move(fine);
  }
  std::ostringstream os;
  os << "born_step: doubled orders still differ by " << diff;
  throw QuadratureError(diff, os.str());
}

BornSeries::BornSeries(const ScalarPotential3D& v, CovariantField initial,
                       const BornOptions& opts) {
  const auto nodes = born_nodes(opts.table_radius);
  auto sup = [&](const CovariantField& f) {
    double s = 0.0;
    for (double r : nodes) s = std::max(s, scaled_norm(f(r)));
    return s;
  };
  fields_.push_back(std::move(initial));
  sup_norms_.push_back(sup(fields_.back()));
  DivergenceWatch watch(opts.divergence_ratio);
  watch.push(sup_norms_.back());
  while (static_cast<int>(fields_.size()) < opts.max_terms) {
    auto table = std::make_shared<RadialTable>(born_step(v, fields_.back(), nodes, opts));
    const double norm = sup([&](double r) { return (*table)(r); });
    if (norm < opts.tol) {
      converged_ = true;
      return;
    }
    fields_.push_back([table](double r) { return (*table)(r); });
    sup_norms_.push_back(norm);
    if (const double ratio = watch.push(norm); ratio > 0.0) {
      std::ostringstream os;
      os << "BornSeries: term ratio " << ratio << " stayed above "
         << opts.divergence_ratio;
      throw SmallnessViolated(ratio, os.str());
    }
  }
}

Covariant BornSeries::sum(double rho) const {
  Covariant s;
  for (const auto& f : fields_) {
    const Covariant t = f(rho);
    s.a += t.a;
    s.b += t.b;
    s.c += t.c;
    s.d += t.d;
  }
  return s;
}

//------------------------------------------------------------------------------
AsymptoticSplit term_split(const Matrix4& m, const Vec3& x) {
  const double r = x.norm();
  const Matrix4 pi = 0.5 * (alpha_dot(x / r) + Matrix4::Identity());
  AsymptoticSplit s;
  s.x = x;
  s.p1 = pi * m / (2.0 * kI);
  s.p2 = std::sqrt(r + 1.0) * (Matrix4::Identity() - pi) * m;
  return s;
}

AsymptoticSplit asymptotic_split(const GreenEvaluation& g) {
  const double r = g.x.norm();
  if (std::abs(g.lambda - kI) > 1e-14)
    throw InvalidArgument("asymptotic_split: the split is defined at lambda = i");
  if (g.s.norm() != 0.0) throw InvalidArgument("asymptotic_split: source point must be 0");
  if (r < 2.0) throw OutOfRegime("asymptotic_split: |x| must be at least 2");
  const Vec3 xhat = g.x / r;
  const Matrix4 id = Matrix4::Identity();
  const Matrix4 ax = alpha_dot(xhat);
  const Matrix4 pi = 0.5 * (ax + id);
  const Matrix4 m = g.value * (4.0 * kPi * r * std::exp(r));
  AsymptoticSplit s;
  s.x = g.x;
  s.p1 = id - pi + pi * (m - kI * ax / r) / (2.0 * kI);
  s.p2 = std::sqrt(r + 1.0) * ((id - pi) * m + pi * kI * ax / r);
  return s;
}

Matrix4 reconstruct(const AsymptoticSplit& s) {
  const double r = s.x.norm();
  const Matrix4 ax = alpha_dot(s.x / r);
  return (std::exp(-r) / (4.0 * kPi * r)) *
         ((kI * ax + kI * Matrix4::Identity()) * s.p1 + s.p2 / std::sqrt(r + 1.0));
}

BornResult born_evaluate(const BornSeries& series, const Vec3& x, double tol) {
  const double r = x.norm();
  if (r == 0.0) throw SingularParameter("born_evaluate: x = 0");
  BornResult out;
  out.green.lambda = kI;
  out.green.x = x;
  DivergenceWatch watch(BornOptions{}.divergence_ratio);
  for (int n = 0; n < series.size(); ++n) {
    BornTerm term;
    term.index = n;
    const Covariant c = series.term(n)(r);
    const Matrix4 scaled = assemble_scaled(c, x / r);
    term.value = assemble(c, x);
    term.scaled_norm = op_norm(scaled);
    term.split = term_split(scaled, x);
    out.green.value += term.value;
    if (n > 0) {
      const double ratio = term.scaled_norm / out.terms.back().scaled_norm;
      out.ratios.push_back(ratio);
    }
    if (const double q = watch.push(term.scaled_norm); q > 0.0) {
      std::ostringstream os;
      os << "born_evaluate: two-step term ratio " << q << " at |x| = " << r;
      throw SmallnessViolated(q, os.str());
    }
    out.terms.push_back(std::move(term));
    if (n > 0 && out.terms.back().scaled_norm < tol) {
      out.converged = true;
      break;
    }
  }
  if (!out.converged) out.converged = series.converged();
  return out;
}

BornResult born_iterate(const ScalarPotential3D& v, const Vec3& x, const BornOptions& opts) {
  const BornSeries series(v, free_field(), opts);
  BornResult out = born_evaluate(series, x, opts.tol);
  // Replace the tabulated leading term by the closed form.
  out.green.value += free_green(kI, x, Vec3::Zero()).value - out.terms.front().value;
  out.terms.front().value = free_green(kI, x, Vec3::Zero()).value;
  return out;
}

//------------------------------------------------------------------------------
namespace {

// 2 pi rho^2 integral over [0, pi] of exp(-rho - t(z)) sin^k z sin z dz.
std::array<double, 3> sphere_integrals(double rho, double r, int order) {
  const double width = std::sqrt(std::max(r - rho, 1e-3) / (r * rho));
  std::vector<double> edges{0.0};
  for (double e = 0.25 * width; e < kPi; e *= 2.0) edges.push_back(e);
  edges.push_back(kPi);
  std::array<double, 3> out{};
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const auto rule = quad::gauss_legendre(order, edges[p], edges[p + 1]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double z = rule.nodes[i];
      const double t = std::sqrt(std::max(r * r + rho * rho - 2.0 * r * rho * std::cos(z), 0.0));
      const double base = rule.weights[i] * std::exp(-rho - t) * std::sin(z);
      out[0] += base;
      out[1] += base * std::sin(z);
      out[2] += base * std::sin(z) * std::sin(z);
    }
  }
  for (double& v : out) v *= 2.0 * kPi * rho * rho;
  return out;
}

double exterior_integral(double r, int order) {
  // (pi / (4 r)) * integral of (u^2 - w^2) e^-u over the region.
  const double u0 = 4.0 * r / 3.0, u1 = 7.0 * r / 3.0;
  std::vector<double> edges;
  const int inner = std::max(1, static_cast<int>(std::ceil(u1 - u0)));
  for (int k = 0; k <= inner; ++k) edges.push_back(u0 + (u1 - u0) * k / inner);
  for (double u = u1 + 2.0; u < u1 + 60.0; u += 2.0) edges.push_back(u);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const auto ur = quad::gauss_legendre(order, edges[p], edges[p + 1]);
    for (std::size_t i = 0; i < ur.nodes.size(); ++i) {
      const double u = ur.nodes[i];
      const double lo = std::max(-r, u0 - u), hi = std::min(r, u - u0);
      if (hi <= lo) continue;
      const auto wr = quad::gauss_legendre(order, lo, hi);
      double inner_sum = 0.0;
      for (std::size_t j = 0; j < wr.nodes.size(); ++j)
        inner_sum += wr.weights[j] * (u * u - wr.nodes[j] * wr.nodes[j]);
      total += ur.weights[i] * std::exp(-u) * inner_sum;
    }
  }
  return kPi / (4.0 * r) * total;
}

template <typename F>
auto doubled(F&& f, double rel_tol, const char* where) {
  auto coarse = f(8);
  for (int order = 16; order <= 64; order *= 2) {
    auto fine = f(order);
    double diff = 0.0, scale = 0.0;
    if constexpr (std::is_same_v<decltype(fine), double>) {
      diff = std::abs(fine - coarse);
      scale = std::abs(fine);
    } else {
      for (std::size_t k = 0; k < fine.size(); ++k) {
        diff = std::max(diff, std::abs(fine[k] - coarse[k]));
        scale = std::max(scale, std::abs(fine[k]));
      }
    }
    if (diff <= rel_tol * scale) return fine;
    coarse = fine;
    if (order == 64) {
      std::ostringstream os;
      os << where << ": quadrature did not converge (relative change " << diff / scale << ")";
      throw QuadratureError(diff / scale, os.str());
    }
  }
  return coarse;
}

}  // namespace

bool SphereBoundCheck::holds() const {
  for (int k = 0; k < 3; ++k)
    if (!(measured[k] <= bound[k])) return false;
  return true;
}

SphereBoundCheck sphere_bound_check(double rho, const Vec3& x) {
  const double r = x.norm();
  if (!(rho > 1.0) || !(r >= 1.5 * rho * (1.0 - 1e-12)))
    throw InvalidArgument("sphere_bound_check: need 1 < rho <= 2|x|/3");
  SphereBoundCheck c;
  c.rho = rho;
  c.x_norm = r;
  c.measured = doubled([&](int order) { return sphere_integrals(rho, r, order); }, 1e-10,
                       "sphere_bound_check");
  const double e = std::exp(-r);
  c.bound = {kSphereBoundConstants[0] * rho * e, kSphereBoundConstants[1] * std::sqrt(rho) * e,
             kSphereBoundConstants[2] * e};
  return c;
}

ExteriorBoundCheck exterior_bound_check(const Vec3& x) {
  const double r = x.norm();
  if (!(r > 1.0)) throw InvalidArgument("exterior_bound_check: need |x| > 1");
  ExteriorBoundCheck c;
  c.x_norm = r;
  c.measured = doubled([&](int order) { return exterior_integral(r, order); }, 1e-10,
                       "exterior_bound_check");
  c.bound = kExteriorBoundConstant * std::exp(-kExteriorRate * r);
  return c;
}

//------------------------------------------------------------------------------
std::array<double, 2> AmplitudeSource::l1_norms() const {
  const double m = 4.0 * kPi * quad::integrate([&](double s) { return g(s) * s * s; }, 0.0,
                                               support, 16, 16);
  return {std::abs(c3) * m, std::abs(c4) * m};
}

std::array<double, 2> AmplitudeSource::exponential_moments() const {
  const double m = 4.0 * kPi * quad::integrate([&](double s) { return g(s) * s * std::sinh(s); },
                                               0.0, support, 16, 16);
  return {c3 * m, c4 * m};
}

AmplitudeSource smooth_ball_source(double c3, double c4) {
  AmplitudeSource f;
  f.g = [](double s) { return s < 1.0 ? (1.0 - s * s) * (1.0 - s * s) : 0.0; };
  f.c3 = c3;
  f.c4 = c4;
  f.support = 1.0;
  return f;
}

AmplitudeResult amplitude_estimate(const ScalarPotential3D& v, const AmplitudeSource& f,
                                   const std::vector<double>& radii,
                                   const std::vector<Vec3>& directions,
                                   const BornOptions& opts) {
  if (f.c3 < 0.0 || f.c4 < 0.0) throw InvalidArgument("amplitude_estimate: need f3, f4 >= 0");
  if (radii.empty() || directions.empty())
    throw InvalidArgument("amplitude_estimate: radii and directions must be non-empty");
  const BornSeries series(v, radial_source_field(f.g, f.support), opts);
  Eigen::Vector4cd spinor(0.0, 0.0, f.c3, f.c4);
  AmplitudeResult out;
  out.source_l1 = f.l1_norms();
  out.converged = series.converged();
  for (const auto& dir : directions) {
    const Vec3 xhat = dir.normalized();
    std::vector<AmplitudeSample> along;
    for (double r : radii) {
      const Eigen::Vector4cd h = assemble_scaled(series.sum(r), xhat) * spinor;
      AmplitudeSample s;
      s.radius = r;
      s.direction = xhat;
      for (int j = 0; j < 2; ++j) {
        s.amplitude[j] = std::abs(h(2 + j));
        s.raw[j] = s.amplitude[j] / (4.0 * kPi * std::exp(1.0));
      }
      if (!along.empty())
        for (int j = 0; j < 2; ++j)
          if (along.back().amplitude[j] > 0.0)
            out.spread = std::max(out.spread, std::abs(s.amplitude[j] - along.back().amplitude[j]) /
                                                  along.back().amplitude[j]);
      along.push_back(s);
    }
    out.samples.insert(out.samples.end(), along.begin(), along.end());
  }
  return out;
}

}  // namespace diracac::greens3d
