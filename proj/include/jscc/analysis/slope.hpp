#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace jscc {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
  /// y - (slope x + intercept) for each point used, in input order.
  std::vector<double> residuals;
};

/// Least-squares line through the (x, y) pairs with lo <= x <= hi. Needs at
/// least four such points.
SlopeFit slope_fit(std::span<const double> x, std::span<const double> y, double lo, double hi);

}  // namespace jscc
