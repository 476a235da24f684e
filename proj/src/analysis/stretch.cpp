#include "jscc/analysis/stretch.hpp"

#include <cmath>
#include <limits>

#include "jscc/analysis/slope.hpp"
#include "jscc/errors.hpp"
#include "jscc/rng.hpp"

namespace jscc {

StretchProfile stretch_profile(const Codec& codec, std::span<const double> deltas,
                               std::size_t samples, std::uint64_t seed, StretchMetric metric) {
  if (samples < 100000) throw ParameterError("stretch profile needs at least 10^5 samples");
  if (deltas.size() < 4) throw ParameterError("stretch profile needs at least 4 deltas");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0) || deltas[i] > 1e-2 || (i > 0 && !(deltas[i] < deltas[i - 1]))) {
      throw ParameterError("deltas must be decreasing within (0, 0.01]");
    }
  }
  const std::size_t dim = static_cast<std::size_t>(codec.channel_dimension());
  std::vector<double> a(dim);
  std::vector<double> b(dim);
  StretchProfile out;
  std::vector<double> log_delta;
  std::vector<double> log_value;
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    const double delta = deltas[di];
    double sum = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
      CounterRng rng(derive_stream_key(seed, di, t));
      const double x = -0.5 + (draw_uniform(rng) + 0.5) * (1.0 - delta);
      codec.encode(x, a);
      codec.encode(x + delta, b);
      for (std::size_t i = 0; i < dim; ++i) {
        double d = b[i] - a[i];
        if (metric == StretchMetric::torus) d -= std::round(d);
        sum += d * d;
      }
    }
    const double value = sum / static_cast<double>(samples);
    out.deltas.push_back(delta);
    out.values.push_back(value);
    log_delta.push_back(std::log(delta));
    log_value.push_back(std::log(value));
  }
  const SlopeFit fit = slope_fit(log_delta, log_value, -std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity());
  out.gamma = fit.slope;
  double ss = 0.0;
  for (double r : fit.residuals) ss += r * r;
  out.fit_residual = std::sqrt(ss / static_cast<double>(fit.residuals.size()));
  return out;
}

}  // namespace jscc
