#include "diracac/grid.hpp"

#include "diracac/types.hpp"

#include <algorithm>
#include <cmath>

namespace diracac {

RadialGrid::RadialGrid(double r_max, std::size_t intervals)
    : r_max_(r_max), step_(r_max / static_cast<double>(intervals)) {
  nodes_.resize(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    nodes_[i] = r_max * static_cast<double>(i) / static_cast<double>(intervals);
}

RadialGrid RadialGrid::uniform(double r_max, double step) {
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw InvalidArgument("RadialGrid: r_max must be positive and finite");
  if (!(step > 0.0) || step > r_max)
    throw InvalidArgument("RadialGrid: step must lie in (0, r_max]");
  const auto n = static_cast<std::size_t>(std::ceil(r_max / step - 1e-9));
  return RadialGrid(r_max, std::max<std::size_t>(n, 1));
}

std::size_t RadialGrid::index_below(double r) const {
  if (r <= 0.0) return 0;
  if (r >= r_max_) return nodes_.size() - 1;
  auto idx = static_cast<std::size_t>(std::floor(r / step_));
  idx = std::min(idx, nodes_.size() - 1);
  while (idx > 0 && nodes_[idx] > r) --idx;
  while (idx + 1 < nodes_.size() && nodes_[idx + 1] <= r) ++idx;
  return idx;
}

}  // namespace diracac
