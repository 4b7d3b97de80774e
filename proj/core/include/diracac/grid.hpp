#pragma once

#include <cstddef>
#include <vector>

namespace diracac {

// Uniform radial grid 0 = r_0 < r_1 < ... < r_N = r_max.
class RadialGrid {
 public:
  RadialGrid() = default;  // empty grid

  // The step is adjusted so that r_max is hit exactly: N = ceil(r_max / step
  // - 1e-9) and step = r_max / N.
  static RadialGrid uniform(double r_max, double step);

  double r_max() const { return r_max_; }
  double step() const { return step_; }
  std::size_t size() const { return nodes_.size(); }
  double node(std::size_t i) const { return nodes_[i]; }
  const std::vector<double>& nodes() const { return nodes_; }

  // Largest index with node <= r (clamped to the grid).
  std::size_t index_below(double r) const;

 private:
  RadialGrid(double r_max, std::size_t intervals);

  double r_max_ = 0.0;
  double step_ = 0.0;
  std::vector<double> nodes_;
};

}  // namespace diracac
