#include "diracac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace diracac::quad {

namespace {

Rule build_gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    if (n < 1) throw InvalidArgument("Gauss-Legendre order must be positive");
    it = cache.emplace(n, n == 1 ? Rule{{0.0}, {2.0}} : build_gauss_legendre(n))
             .first;
  }
  return it->second;
}

Rule gauss_legendre(int n, double a, double b) {
  Rule rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

namespace {

template <typename T>
T simpson_impl(std::span<const T> v, double h) {
  const std::size_t n = v.size();
  if (n < 2) return T{};
  if (n == 2) return 0.5 * h * (v[0] + v[1]);
  const std::size_t last = (n % 2 == 1) ? n - 1 : n - 2;
  T sum = v[0] + v[last];
  for (std::size_t i = 1; i < last; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
  T total = sum * (h / 3.0);
  if (last != n - 1) total += 0.5 * h * (v[n - 2] + v[n - 1]);
  return total;
}

}  // namespace

double simpson(std::span<const double> values, double step) {
  return simpson_impl(values, step);
}

Complex simpson(std::span<const Complex> values, double step) {
  return simpson_impl(values, step);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order) {
  const Rule& rule = gauss_legendre(order);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    total += 0.5 * width * s;
  }
  return total;
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<Complex> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n != y_.size() || n < 2)
    throw InvalidArgument("CubicSpline needs at least two matching samples");
  second_.assign(n, Complex{});
  if (n == 2) return;
  // Thomas algorithm for the natural spline system.
  std::vector<double> diag(n, 0.0), upper(n, 0.0);
  std::vector<Complex> rhs(n, Complex{});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (hl + hr);
    upper[i] = hr;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = x_[i] - x_[i - 1];
    const double factor = lower / diag[i - 1];
    diag[i] -= factor * upper[i - 1];
    rhs[i] -= factor * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    second_[i] = (rhs[i] - upper[i] * second_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

Complex CubicSpline::operator()(double t) const {
  const std::size_t n = x_.size();
  std::size_t hi;
  if (t <= x_.front()) {
    hi = 1;
  } else if (t >= x_.back()) {
    hi = n - 1;
  } else {
    hi = static_cast<std::size_t>(
        std::upper_bound(x_.begin(), x_.end(), t) - x_.begin());
  }
  const std::size_t lo = hi - 1;
  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - t) / h;
  const double b = (t - x_[lo]) / h;
  return a * y_[lo] + b * y_[hi] +
         ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) *
             (h * h / 6.0);
}

}  // namespace diracac::quad
