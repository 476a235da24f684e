#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "jscc/codecs/codec.hpp"

namespace jscc {

inline constexpr std::size_t kMinNormalizationSamples = 1'000'000;
inline constexpr std::uint64_t kNormalizationSeed = 0x6a09e667f3bcc908ULL;

/// Per-dimension mean of the constellation and the average centered power
/// per dimension. The harness sends (s - mean) / sqrt(power).
struct NormalizationRecord {
  std::vector<double> mean;
  double power = 0.0;
  /// Centered power of each dimension; `power` is their average.
  std::vector<double> dimension_power;
  std::size_t samples = 0;
};

/// Monte Carlo estimate over source draws of the codec's source kind.
/// Deterministic for a given seed.
NormalizationRecord measure_normalization(const Codec& codec,
                                          std::size_t samples = kMinNormalizationSamples,
                                          std::uint64_t seed = kNormalizationSeed);

}  // namespace jscc
