#pragma once

#include "diracac/grid.hpp"
#include "diracac/types.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace diracac {

// One-sided evaluation at jump points. Inside an integration cell [r0, r1]
// the solver samples r0 from the right and r1 from the left.
enum class Side { Left, Right };

// Real scalar function on [0, inf) with explicit jump locations.
struct ScalarProfile {
  std::function<double(double r, Side side)> value;
  std::vector<double> breakpoints;
  double support = 0.0;  // identically zero beyond this radius

  double operator()(double r, Side side = Side::Right) const {
    return value(r, side);
  }
};

namespace profiles {

// Indicator of [lo, hi].
ScalarProfile step(double lo, double hi);
// C-infinity bump exp(1 - 1/(1 - u^2)) on (lo, hi), peak value 1 at the centre.
ScalarProfile bump(double lo, double hi);
// (1 + r)^(-exponent) on [0, cutoff].
ScalarProfile power_decay(double exponent, double cutoff);
// 1 / (r + 1) on [0, cutoff].
ScalarProfile coulomb_tail(double cutoff);

}  // namespace profiles

// Natural cubic spline through matrix-valued samples.
class MatrixSpline {
 public:
  MatrixSpline() = default;
  MatrixSpline(std::vector<double> knots, std::vector<CMatrix> values);

  void evaluate(double r, CMatrix& out) const;
  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }

 private:
  std::vector<double> knots_;
  std::vector<CMatrix> values_;
  std::vector<CMatrix> second_;
};

// Pair of m x m Hermitian matrix functions a(r), b(r) of the canonical
// system, identically zero beyond support_radius().
class MatrixPotential {
 public:
  using Sampler =
      std::function<void(double r, Side side, CMatrix& a, CMatrix& b)>;

  struct Term {
    ScalarProfile profile;
    CMatrix a;  // coefficient matrix multiplying profile in a(r)
    CMatrix b;  // coefficient matrix multiplying profile in b(r)
  };

  MatrixPotential(int m, double support_radius, Sampler sampler,
                  std::vector<double> breakpoints = {});

  static MatrixPotential free(int m);
  // a(r) = sum_k p_k(r) A_k, b(r) = sum_k p_k(r) B_k. Non-Hermitian
  // coefficients are symmetrized with a warning when the defect > 1e-8.
  static MatrixPotential from_terms(int m, std::vector<Term> terms);
  // Scalar convenience: m = 1 with a = a_amp * p(r), b = b_amp * p(r).
  static MatrixPotential scalar(const ScalarProfile& profile, double a_amp,
                                double b_amp);
  // Samples on a uniform grid, linear interpolation between nodes.
  static MatrixPotential from_samples(const RadialGrid& grid,
                                      std::vector<CMatrix> a,
                                      std::vector<CMatrix> b,
                                      double support_radius);
  // Piecewise cubic-spline tables. Each segment is splined independently so
  // jumps between segments are preserved; zero outside all segments.
  struct Segment {
    std::vector<double> knots;
    std::vector<CMatrix> a;
    std::vector<CMatrix> b;
  };
  static MatrixPotential from_segments(int m, std::vector<Segment> segments);

  static MatrixPotential block_diagonal(const MatrixPotential& p,
                                        const MatrixPotential& q);
  static MatrixPotential sum(const MatrixPotential& p,
                             const MatrixPotential& q);

  MatrixPotential scaled(double tau) const;
  // Multiplies by the indicator of [0, radius].
  MatrixPotential truncated(double radius) const;

  int size() const { return m_; }
  double support_radius() const { return support_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool is_free() const { return free_; }

  // a and b are resized to m x m if needed.
  void evaluate(double r, Side side, CMatrix& a, CMatrix& b) const;
  CMatrix a(double r, Side side = Side::Right) const;
  CMatrix b(double r, Side side = Side::Right) const;

  // Panelled Gauss-Legendre integral over [0, support] of f(a(r), b(r)),
  // split at every breakpoint.
  CMatrix integrate(
      const std::function<CMatrix(double r, const CMatrix& a,
                                  const CMatrix& b)>& f,
      int order = 16, double max_panel = 0.25) const;

  // integral of (b + i a)* (b + i a) dr, i.e. of |b + i a|^2.
  CMatrix abs_g_squared_integral() const;
  // integral of ||(b + i a) xi||^2 dr.
  double column_l2(const CVector& xi) const;
  // integral of ||a||_2^2 + ||b||_2^2 dr.
  double operator_l2() const;
  // max over the support of the 2-norm of V = [[-b,-a],[-a,b]].
  double sup_norm(double probe_step = 1e-2) const;

 private:
  int m_;
  double support_;
  Sampler sampler_;
  std::vector<double> breakpoints_;
  bool free_ = false;
};

// Warning sink used by loaders and factories (default: stderr).
void set_warning_sink(std::function<void(const std::string&)> sink);
void warn(const std::string& message);

}  // namespace diracac
