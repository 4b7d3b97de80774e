#include "diracac/potential.hpp"

#include "diracac/linalg.hpp"
#include "diracac/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>

namespace diracac {

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

std::function<void(const std::string&)>& sink() {
  static std::function<void(const std::string&)> s =
      [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  return s;
}

void merge_breakpoints(std::vector<double>& dst, const std::vector<double>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
  std::sort(dst.begin(), dst.end());
  dst.erase(std::unique(dst.begin(), dst.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-14; }),
            dst.end());
}

// Right-continuous indicator of [lo, hi) from the right, (lo, hi] from the left.
bool inside(double r, Side side, double lo, double hi) {
  return side == Side::Right ? (r >= lo && r < hi) : (r > lo && r <= hi);
}

CMatrix symmetrized(const CMatrix& m, const char* what) {
  const double defect = linalg::hermitian_defect(m);
  if (defect > 1e-8) {
    std::ostringstream os;
    os << what << " is not Hermitian (defect " << defect << "); symmetrized";
    warn(os.str());
  }
  return linalg::hermitian_part(m);
}

}  // namespace

void set_warning_sink(std::function<void(const std::string&)> s) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  sink() = std::move(s);
}

void warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  if (sink()) sink()(message);
}

//------------------------------------------------------------------------------
namespace profiles {

ScalarProfile step(double lo, double hi) {
  if (!(hi > lo) || lo < 0.0) throw InvalidArgument("step: need 0 <= lo < hi");
  ScalarProfile p;
  p.value = [lo, hi](double r, Side side) {
    return inside(r, side, lo, hi) ? 1.0 : 0.0;
  };
  p.breakpoints = {lo, hi};
  p.support = hi;
  return p;
}

ScalarProfile bump(double lo, double hi) {
  if (!(hi > lo) || lo < 0.0) throw InvalidArgument("bump: need 0 <= lo < hi");
  ScalarProfile p;
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  p.value = [mid, half](double r, Side) {
    const double u = (r - mid) / half;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
  };
  p.breakpoints = {lo, hi};
  p.support = hi;
  return p;
}

ScalarProfile power_decay(double exponent, double cutoff) {
  if (!(cutoff > 0.0)) throw InvalidArgument("power_decay: cutoff must be positive");
  ScalarProfile p;
  p.value = [exponent, cutoff](double r, Side side) {
    return inside(r, side, 0.0, cutoff) || r == 0.0
               ? std::pow(1.0 + r, -exponent)
               : 0.0;
  };
  p.breakpoints = {cutoff};
  p.support = cutoff;
  return p;
}

ScalarProfile coulomb_tail(double cutoff) { return power_decay(1.0, cutoff); }

}  // namespace profiles

//------------------------------------------------------------------------------
MatrixSpline::MatrixSpline(std::vector<double> knots, std::vector<CMatrix> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  const std::size_t n = knots_.size();
  if (n < 2 || n != values_.size())
    throw InvalidArgument("MatrixSpline needs at least two matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(knots_[i] > knots_[i - 1]))
      throw InvalidArgument("MatrixSpline knots must increase");
  const CMatrix zero = CMatrix::Zero(values_[0].rows(), values_[0].cols());
  second_.assign(n, zero);
  if (n == 2) return;
  std::vector<double> diag(n, 0.0), upper(n, 0.0);
  std::vector<CMatrix> rhs(n, zero);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = knots_[i] - knots_[i - 1];
    const double hr = knots_[i + 1] - knots_[i];
    diag[i] = 2.0 * (hl + hr);
    upper[i] = hr;
    rhs[i] = 6.0 * ((values_[i + 1] - values_[i]) / hr -
                    (values_[i] - values_[i - 1]) / hl);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double factor = (knots_[i] - knots_[i - 1]) / diag[i - 1];
    diag[i] -= factor * upper[i - 1];
    rhs[i] -= factor * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    second_[i] = (rhs[i] - upper[i] * second_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

void MatrixSpline::evaluate(double r, CMatrix& out) const {
  const std::size_t n = knots_.size();
  std::size_t hi;
  if (r <= knots_.front())
    hi = 1;
  else if (r >= knots_.back())
    hi = n - 1;
  else
    hi = static_cast<std::size_t>(
        std::upper_bound(knots_.begin(), knots_.end(), r) - knots_.begin());
  const std::size_t lo = hi - 1;
  const double h = knots_[hi] - knots_[lo];
  const double wa = (knots_[hi] - r) / h;
  const double wb = (r - knots_[lo]) / h;
  const double ca = (wa * wa * wa - wa) * h * h / 6.0;
  const double cb = (wb * wb * wb - wb) * h * h / 6.0;
  out.noalias() = wa * values_[lo];
  out.noalias() += wb * values_[hi];
  out.noalias() += ca * second_[lo];
  out.noalias() += cb * second_[hi];
}

//------------------------------------------------------------------------------
MatrixPotential::MatrixPotential(int m, double support_radius, Sampler sampler,
                                 std::vector<double> breakpoints)
    : m_(m), support_(support_radius), sampler_(std::move(sampler)) {
  if (m < 1) throw InvalidArgument("MatrixPotential: m must be positive");
  if (!(support_radius >= 0.0) || !std::isfinite(support_radius))
    throw InvalidArgument("MatrixPotential: support radius must be finite and >= 0");
  breakpoints.push_back(support_radius);
  std::vector<double> kept;
  for (double x : breakpoints)
    if (x > 0.0 && x <= support_radius) kept.push_back(x);
  merge_breakpoints(breakpoints_, kept);
}

MatrixPotential MatrixPotential::free(int m) {
  MatrixPotential p(m, 0.0, [](double, Side, CMatrix& a, CMatrix& b) {
    a.setZero();
    b.setZero();
  });
  p.free_ = true;
  return p;
}

MatrixPotential MatrixPotential::from_terms(int m, std::vector<Term> terms) {
  double support = 0.0;
  std::vector<double> breaks;
  for (auto& t : terms) {
    if (t.a.size() == 0) t.a = CMatrix::Zero(m, m);
    if (t.b.size() == 0) t.b = CMatrix::Zero(m, m);
    if (t.a.rows() != m || t.a.cols() != m || t.b.rows() != m || t.b.cols() != m)
      throw InvalidArgument("from_terms: coefficient size mismatch");
    t.a = symmetrized(t.a, "coefficient of a");
    t.b = symmetrized(t.b, "coefficient of b");
    support = std::max(support, t.profile.support);
    breaks.insert(breaks.end(), t.profile.breakpoints.begin(),
                  t.profile.breakpoints.end());
  }
  auto sampler = [terms = std::move(terms)](double r, Side side, CMatrix& a,
                                            CMatrix& b) {
    a.setZero();
    b.setZero();
    for (const auto& t : terms) {
      const double p = t.profile(r, side);
      if (p == 0.0) continue;
      a.noalias() += p * t.a;
      b.noalias() += p * t.b;
    }
  };
  if (support == 0.0) return free(m);
  return MatrixPotential(m, support, std::move(sampler), std::move(breaks));
}

MatrixPotential MatrixPotential::scalar(const ScalarProfile& profile,
                                        double a_amp, double b_amp) {
  Term t{profile, CMatrix::Constant(1, 1, a_amp), CMatrix::Constant(1, 1, b_amp)};
  return from_terms(1, {t});
}

MatrixPotential MatrixPotential::from_samples(const RadialGrid& grid,
                                              std::vector<CMatrix> a,
                                              std::vector<CMatrix> b,
                                              double support_radius) {
  if (a.size() != grid.size() || b.size() != grid.size())
    throw InvalidArgument("from_samples: one sample per grid node is required");
  const int m = static_cast<int>(a.front().rows());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows() != m || a[i].cols() != m || b[i].rows() != m || b[i].cols() != m)
      throw InvalidArgument("from_samples: inconsistent matrix sizes");
    a[i] = symmetrized(a[i], "sampled a");
    b[i] = symmetrized(b[i], "sampled b");
  }
  if (support_radius > grid.r_max())
    throw InvalidArgument("from_samples: support radius beyond the grid");
  auto sampler = [grid, a = std::move(a), b = std::move(b)](
                     double r, Side, CMatrix& ao, CMatrix& bo) {
    const std::size_t i = grid.index_below(r);
    if (i + 1 >= grid.size()) {
      ao = a.back();
      bo = b.back();
      return;
    }
    const double w = (r - grid.node(i)) / (grid.node(i + 1) - grid.node(i));
    ao.noalias() = (1.0 - w) * a[i];
    ao.noalias() += w * a[i + 1];
    bo.noalias() = (1.0 - w) * b[i];
    bo.noalias() += w * b[i + 1];
  };
  return MatrixPotential(m, support_radius, std::move(sampler));
}

MatrixPotential MatrixPotential::from_segments(int m, std::vector<Segment> segments) {
  struct Piece {
    double lo, hi;
    MatrixSpline a, b;
  };
  std::vector<Piece> pieces;
  std::vector<double> breaks;
  double support = 0.0;
  for (auto& s : segments) {
    if (s.knots.size() < 2) throw InvalidArgument("from_segments: short segment");
    for (auto& x : s.a) x = linalg::hermitian_part(x);
    for (auto& x : s.b) x = linalg::hermitian_part(x);
    const double lo = s.knots.front(), hi = s.knots.back();
    pieces.push_back({lo, hi, MatrixSpline(s.knots, std::move(s.a)),
                      MatrixSpline(s.knots, std::move(s.b))});
    breaks.push_back(lo);
    breaks.push_back(hi);
    support = std::max(support, hi);
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
  auto sampler = [pieces = std::move(pieces)](double r, Side side, CMatrix& a,
                                              CMatrix& b) {
    for (const auto& p : pieces) {
      if (inside(r, side, p.lo, p.hi) || (r == 0.0 && p.lo == 0.0)) {
        p.a.evaluate(r, a);
        p.b.evaluate(r, b);
        return;
      }
    }
    a.setZero();
    b.setZero();
  };
  return MatrixPotential(m, support, std::move(sampler), std::move(breaks));
}

MatrixPotential MatrixPotential::block_diagonal(const MatrixPotential& p,
                                                const MatrixPotential& q) {
  const int mp = p.m_, mq = q.m_;
  auto sampler = [p, q, mp, mq](double r, Side side, CMatrix& a, CMatrix& b) {
    thread_local CMatrix pa, pb, qa, qb;
    p.evaluate(r, side, pa, pb);
    q.evaluate(r, side, qa, qb);
    a.setZero();
    b.setZero();
    a.topLeftCorner(mp, mp) = pa;
    b.topLeftCorner(mp, mp) = pb;
    a.bottomRightCorner(mq, mq) = qa;
    b.bottomRightCorner(mq, mq) = qb;
  };
  std::vector<double> breaks = p.breakpoints_;
  breaks.insert(breaks.end(), q.breakpoints_.begin(), q.breakpoints_.end());
  return MatrixPotential(mp + mq, std::max(p.support_, q.support_),
                         std::move(sampler), std::move(breaks));
}

MatrixPotential MatrixPotential::sum(const MatrixPotential& p,
                                     const MatrixPotential& q) {
  if (p.m_ != q.m_) throw InvalidArgument("sum: size mismatch");
  auto sampler = [p, q](double r, Side side, CMatrix& a, CMatrix& b) {
    thread_local CMatrix qa, qb;
    p.evaluate(r, side, a, b);
    q.evaluate(r, side, qa, qb);
    a += qa;
    b += qb;
  };
  std::vector<double> breaks = p.breakpoints_;
  breaks.insert(breaks.end(), q.breakpoints_.begin(), q.breakpoints_.end());
  return MatrixPotential(p.m_, std::max(p.support_, q.support_),
                         std::move(sampler), std::move(breaks));
}

MatrixPotential MatrixPotential::scaled(double tau) const {
  if (free_ || tau == 0.0) return free(m_);
  auto sampler = [self = *this, tau](double r, Side side, CMatrix& a, CMatrix& b) {
    self.evaluate(r, side, a, b);
    a *= tau;
    b *= tau;
  };
  return MatrixPotential(m_, support_, std::move(sampler), breakpoints_);
}

MatrixPotential MatrixPotential::truncated(double radius) const {
  if (!(radius > 0.0)) throw InvalidArgument("truncated: radius must be positive");
  if (free_ || radius >= support_) return *this;
  auto sampler = [self = *this, radius](double r, Side side, CMatrix& a,
                                        CMatrix& b) {
    if (r > radius || (r == radius && side == Side::Right)) {
      a.setZero();
      b.setZero();
      return;
    }
    self.evaluate(r, side, a, b);
  };
  std::vector<double> breaks = breakpoints_;
  breaks.push_back(radius);
  return MatrixPotential(m_, radius, std::move(sampler), std::move(breaks));
}

void MatrixPotential::evaluate(double r, Side side, CMatrix& a, CMatrix& b) const {
  if (a.rows() != m_ || a.cols() != m_) a.resize(m_, m_);
  if (b.rows() != m_ || b.cols() != m_) b.resize(m_, m_);
  if (free_ || r > support_ || (r == support_ && side == Side::Right) || r < 0.0) {
    a.setZero();
    b.setZero();
    return;
  }
  sampler_(r, side, a, b);
}

CMatrix MatrixPotential::a(double r, Side side) const {
  CMatrix a, b;
  evaluate(r, side, a, b);
  return a;
}

CMatrix MatrixPotential::b(double r, Side side) const {
  CMatrix a, b;
  evaluate(r, side, a, b);
  return b;
}

CMatrix MatrixPotential::integrate(
    const std::function<CMatrix(double, const CMatrix&, const CMatrix&)>& f,
    int order, double max_panel) const {
  CMatrix a(m_, m_), b(m_, m_);
  CMatrix total;
  std::vector<double> edges{0.0};
  for (double x : breakpoints_) edges.push_back(x);
  if (support_ == 0.0) {
    a.setZero();
    b.setZero();
    return f(0.0, a, b) * 0.0;
  }
  const auto& rule = quad::gauss_legendre(order);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double lo = edges[k], hi = edges[k + 1];
    if (!(hi > lo)) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_panel)));
    const double w = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lo + (p + 0.5) * w;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = mid + 0.5 * w * rule.nodes[i];
        evaluate(r, Side::Right, a, b);
        CMatrix v = f(r, a, b) * (0.5 * w * rule.weights[i]);
        if (total.size() == 0)
          total = std::move(v);
        else
          total += v;
      }
    }
  }
  return total;
}

CMatrix MatrixPotential::abs_g_squared_integral() const {
  if (free_ || support_ == 0.0) return CMatrix::Zero(m_, m_);
  return integrate([](double, const CMatrix& a, const CMatrix& b) {
    const CMatrix g = b + 1i * a;
    return CMatrix(g.adjoint() * g);
  });
}

double MatrixPotential::column_l2(const CVector& xi) const {
  if (xi.size() != m_) throw InvalidArgument("column_l2: vector size mismatch");
  if (free_ || support_ == 0.0) return 0.0;
  const CMatrix v = integrate([&xi](double, const CMatrix& a, const CMatrix& b) {
    const CVector g = (b + 1i * a) * xi;
    return CMatrix::Constant(1, 1, g.squaredNorm());
  });
  return v(0, 0).real();
}

double MatrixPotential::operator_l2() const {
  if (free_ || support_ == 0.0) return 0.0;
  const CMatrix v = integrate([](double, const CMatrix& a, const CMatrix& b) {
    const double na = a.size() ? a.operatorNorm() : 0.0;
    const double nb = b.size() ? b.operatorNorm() : 0.0;
    return CMatrix::Constant(1, 1, na * na + nb * nb);
  });
  return v(0, 0).real();
}

double MatrixPotential::sup_norm(double probe_step) const {
  if (free_ || support_ == 0.0) return 0.0;
  CMatrix a(m_, m_), b(m_, m_), v(2 * m_, 2 * m_);
  double best = 0.0;
  const int n = std::max(2, static_cast<int>(std::ceil(support_ / probe_step)));
  for (int i = 0; i <= n; ++i) {
    const double r = support_ * i / n;
    for (Side side : {Side::Left, Side::Right}) {
      evaluate(r, side, a, b);
      v << -b, -a, -a, b;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(v, Eigen::EigenvaluesOnly);
      best = std::max(best, es.eigenvalues().cwiseAbs().maxCoeff());
    }
  }
  return best;
}

}  // namespace diracac
