#pragma once

#include "diracac/types.hpp"

#include <functional>
#include <span>
#include <vector>

namespace diracac::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule with n points on [-1, 1]. Rules are cached per n.
const Rule& gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a, b].
Rule gauss_legendre(int n, double a, double b);

// Composite Simpson on uniformly spaced samples; falls back to the
// trapezoid rule on the last interval when the sample count is even.
double simpson(std::span<const double> values, double step);
Complex simpson(std::span<const Complex> values, double step);

// Panelled Gauss-Legendre integral of a smooth function over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels = 8, int order = 16);

// Natural cubic spline through (x_i, y_i) with complex values.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<Complex> y);

  Complex operator()(double t) const;
  bool empty() const { return x_.empty(); }
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<Complex> y_;
  std::vector<Complex> second_;  // second derivatives at the knots
};

}  // namespace diracac::quad
