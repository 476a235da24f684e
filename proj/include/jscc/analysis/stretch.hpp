#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jscc/codecs/codec.hpp"

namespace jscc {

/// `torus` measures coordinate differences modulo 1, which removes the
/// unit jumps of mod-1 maps.
enum class StretchMetric { euclidean, torus };

struct StretchProfile {
  std::vector<double> deltas;
  std::vector<double> values;  // d_f(delta)
  double gamma = 0.0;
  double fit_residual = 0.0;
};

/// d_f(delta) = E |f(x + delta) - f(x)|^2 with x uniform on
/// [-1/2, 1/2 - delta), and gamma from the log-log least-squares fit.
StretchProfile stretch_profile(const Codec& codec, std::span<const double> deltas,
                               std::size_t samples, std::uint64_t seed = 1,
                               StretchMetric metric = StretchMetric::euclidean);

}  // namespace jscc
