#pragma once

#include <cstdint>
#include <span>

#include "jscc/rng.hpp"

namespace jscc {

inline constexpr double kUniformVariance = 1.0 / 12.0;

/// One channel operating point. `sigma` is in normalized (unit transmit
/// power) units; `gain` is sqrt of the codec's measured power, so the noise
/// std in the codec's own units is sigma * gain.
struct NoisePoint {
  double sigma = 0.0;
  double snr_db = 0.0;
  std::uint64_t master_seed = 0;
  std::uint64_t point_index = 0;
  double gain = 1.0;

  double native_sigma() const { return sigma * gain; }
};

/// sigma = 10^(-snr_db / 20).
double sigma_from_snr_db(double snr_db);
double snr_db_from_sigma(double sigma);

/// 10 log10(source_variance / D). Throws DomainError for D <= 0.
double sdr_db(double distortion, double source_variance = kUniformVariance);

NoisePoint make_noise_point(double snr_db, std::uint64_t master_seed, std::uint64_t point_index);

/// y_i = s_i + sigma z_i with i.i.d. standard normal z_i.
void awgn(std::span<const double> s, double sigma, CounterRng& rng, std::span<double> y);

}  // namespace jscc
