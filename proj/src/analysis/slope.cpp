#include "jscc/analysis/slope.hpp"

#include <cmath>

#include "jscc/errors.hpp"

namespace jscc {

SlopeFit slope_fit(std::span<const double> x, std::span<const double> y, double lo, double hi) {
  if (x.size() != y.size()) throw ParameterError("slope fit: x and y differ in length");
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= lo && x[i] <= hi && std::isfinite(y[i])) used.push_back(i);
  }
  if (used.size() < 4) {
    throw ParameterError("slope fit needs at least 4 points in the window");
  }
  const double n = static_cast<double>(used.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i : used) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i : used) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ParameterError("slope fit: window points share one x value");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = used.size();
  for (std::size_t i : used) fit.residuals.push_back(y[i] - (fit.slope * x[i] + fit.intercept));
  return fit;
}

}  // namespace jscc
