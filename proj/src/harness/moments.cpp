#include <cmath>
#include <vector>

#include "jscc/harness.hpp"
#include "jscc/numrep.hpp"
#include "jscc/rng.hpp"

namespace jscc {

namespace {

void neumaier(double& sum, double& carry, double v) {
  const double t = sum + v;
  carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
  sum = t;
}

}  // namespace

void ErrorMoments::add(double e2) {
  neumaier(sum2, carry2, e2);
  neumaier(sum4, carry4, e2 * e2);
  ++count;
}

void ErrorMoments::merge(const ErrorMoments& other) {
  neumaier(sum2, carry2, other.sum2);
  neumaier(sum2, carry2, other.carry2);
  neumaier(sum4, carry4, other.sum4);
  neumaier(sum4, carry4, other.carry4);
  count += other.count;
}

double ErrorMoments::mean() const {
  return count == 0 ? 0.0 : (sum2 + carry2) / static_cast<double>(count);
}

double ErrorMoments::std_err() const {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  const double m2 = mean();
  const double m4 = (sum4 + carry4) / n;
  const double var = std::max(0.0, (m4 - m2 * m2) * n / (n - 1.0));
  return std::sqrt(var / n);
}

ErrorMoments run_trials(const Codec& codec, const NormalizationRecord& norm, const NoisePoint& point,
                        std::size_t first, std::size_t count) {
  const std::size_t dim = static_cast<std::size_t>(codec.channel_dimension());
  std::vector<double> s(dim);
  std::vector<double> y(dim);
  const double native = point.sigma * std::sqrt(norm.power);
  const DecodeContext ctx{native};
  const SourceKind kind = codec.source_kind();
  ErrorMoments m;
  for (std::size_t t = first; t < first + count; ++t) {
    CounterRng rng(derive_stream_key(point.master_seed, point.point_index, t));
    const double x = draw_source(kind, rng);
    codec.encode(x, s);
    // Normalizing to unit power and back leaves the noise scaled by sqrt(P).
    awgn(s, native, rng, y);
    const double e = codec.decode(y, ctx) - x;
    m.add(e * e);
  }
  return m;
}

}  // namespace jscc
