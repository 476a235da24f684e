#include "jscc/analysis/boxcount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jscc/analysis/slope.hpp"
#include "jscc/errors.hpp"

namespace jscc {

namespace {

__extension__ typedef unsigned __int128 Key;

// Number of distinct boxes among the first `count` points.
std::size_t occupied(const std::vector<double>& points, int dim, std::size_t count, double eps) {
  std::vector<std::int64_t> lo(static_cast<std::size_t>(dim), std::numeric_limits<std::int64_t>::max());
  std::vector<std::int64_t> hi(static_cast<std::size_t>(dim), std::numeric_limits<std::int64_t>::min());
  std::vector<std::int64_t> idx(count * static_cast<std::size_t>(dim));
  for (std::size_t p = 0; p < count; ++p) {
    for (int d = 0; d < dim; ++d) {
      const std::size_t at = p * static_cast<std::size_t>(dim) + static_cast<std::size_t>(d);
      const auto j = static_cast<std::int64_t>(std::floor(points[at] / eps));
      idx[at] = j;
      lo[d] = std::min(lo[d], j);
      hi[d] = std::max(hi[d], j);
    }
  }
  // Mixed-radix packing of the box index.
  std::vector<Key> radix(static_cast<std::size_t>(dim));
  Key span_total = 1;
  for (int d = 0; d < dim; ++d) {
    radix[d] = span_total;
    const Key width = static_cast<Key>(hi[d] - lo[d] + 1);
    if (span_total > std::numeric_limits<Key>::max() / width) {
      throw CapacityError("box grid too fine for this ambient dimension");
    }
    span_total *= width;
  }
  std::vector<Key> keys(count);
  for (std::size_t p = 0; p < count; ++p) {
    Key k = 0;
    for (int d = 0; d < dim; ++d) {
      const std::size_t at = p * static_cast<std::size_t>(dim) + static_cast<std::size_t>(d);
      k += static_cast<Key>(idx[at] - lo[d]) * radix[d];
    }
    keys[p] = k;
  }
  std::sort(keys.begin(), keys.end());
  return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

}  // namespace

PointSampler constellation_sampler(const Codec& codec) {
  return [&codec](CounterRng& rng, std::span<double> out) { codec.encode(draw_uniform(rng), out); };
}

std::vector<double> dyadic_epsilons(int first_exponent, int last_exponent) {
  std::vector<double> eps;
  for (int e = first_exponent; e <= last_exponent; ++e) eps.push_back(std::ldexp(1.0, -e));
  return eps;
}

DimensionEstimate boxcount_dimension(const PointSampler& sampler, int dimension,
                                     std::span<const double> epsilons, std::size_t samples,
                                     std::uint64_t seed) {
  if (dimension < 1) throw ParameterError("boxcount: dimension must be positive");
  if (epsilons.size() < 4) throw ParameterError("boxcount: need at least 4 box sizes");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] < epsilons[i - 1]))) {
      throw ParameterError("boxcount: box sizes must be positive and decreasing");
    }
  }
  if (samples < 1) throw ParameterError("boxcount: need samples");
  const std::size_t total = 2 * samples;
  std::vector<double> points(total * static_cast<std::size_t>(dimension));
  for (std::size_t p = 0; p < total; ++p) {
    CounterRng rng(derive_stream_key(seed, 0xb0c5, p));
    sampler(rng, std::span<double>(points.data() + p * static_cast<std::size_t>(dimension),
                                   static_cast<std::size_t>(dimension)));
  }
  DimensionEstimate est;
  est.samples = total;
  std::vector<double> log_inv;
  std::vector<double> log_count;
  for (double eps : epsilons) {
    const std::size_t half = occupied(points, dimension, samples, eps);
    const std::size_t full = occupied(points, dimension, total, eps);
    if (static_cast<double>(full - half) >= 0.02 * static_cast<double>(half)) est.saturated = false;
    est.epsilons.push_back(eps);
    est.counts.push_back(full);
    log_inv.push_back(std::log(1.0 / eps));
    log_count.push_back(std::log(static_cast<double>(full)));
  }
  const SlopeFit fit = slope_fit(log_inv, log_count, -std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity());
  est.dimension = fit.slope;
  double ss = 0.0;
  for (double r : fit.residuals) ss += r * r;
  est.fit_residual = std::sqrt(ss / static_cast<double>(fit.residuals.size()));
  return est;
}

}  // namespace jscc
