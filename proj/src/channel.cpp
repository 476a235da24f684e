#include "jscc/channel.hpp"

#include <cmath>
#include <random>

#include "jscc/errors.hpp"

namespace jscc {

double sigma_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 20.0); }

double snr_db_from_sigma(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  return -20.0 * std::log10(sigma);
}

double sdr_db(double distortion, double source_variance) {
  if (!(distortion > 0.0)) throw DomainError("distortion must be positive");
  return 10.0 * std::log10(source_variance / distortion);
}

NoisePoint make_noise_point(double snr_db, std::uint64_t master_seed, std::uint64_t point_index) {
  NoisePoint p;
  p.snr_db = snr_db;
  p.sigma = sigma_from_snr_db(snr_db);
  p.master_seed = master_seed;
  p.point_index = point_index;
  return p;
}

void awgn(std::span<const double> s, double sigma, CounterRng& rng, std::span<double> y) {
  if (sigma < 0.0) throw DomainError("awgn: sigma must be non-negative");
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double z = normal(rng);
    y[i] = sigma == 0.0 ? s[i] : s[i] + sigma * z;
  }
}

}  // namespace jscc
