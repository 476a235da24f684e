#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "jscc/codecs/codec.hpp"
#include "jscc/rng.hpp"

namespace jscc {

/// Writes one point of the set into `out` using randomness from `rng`.
using PointSampler = std::function<void(CounterRng& rng, std::span<double> out)>;

/// Points of a codec's constellation for uniform source draws.
PointSampler constellation_sampler(const Codec& codec);

struct DimensionEstimate {
  std::vector<double> epsilons;
  std::vector<std::size_t> counts;
  double dimension = 0.0;
  /// Root-mean-square residual of the log-log fit.
  double fit_residual = 0.0;
  /// False when doubling the sample count moved some count by 2% or more.
  bool saturated = true;
  std::size_t samples = 0;
};

/// Counts occupied half-open boxes [j eps, (j + 1) eps) of an origin-anchored
/// grid, using 2 * samples points (the first half serves the saturation
/// check), then fits log m_eps against log(1 / eps).
DimensionEstimate boxcount_dimension(const PointSampler& sampler, int dimension,
                                     std::span<const double> epsilons, std::size_t samples,
                                     std::uint64_t seed = 1);

/// eps_0, eps_0 / 2, ... (count values).
std::vector<double> dyadic_epsilons(int first_exponent, int last_exponent);

}  // namespace jscc
