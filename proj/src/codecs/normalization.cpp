#include "jscc/codecs/normalization.hpp"

#include <cmath>

#include "jscc/errors.hpp"
#include "jscc/rng.hpp"

namespace jscc {

namespace {

struct Compensated {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double total() const { return sum + carry; }
};

}  // namespace

NormalizationRecord measure_normalization(const Codec& codec, std::size_t samples,
                                          std::uint64_t seed) {
  if (samples < kMinNormalizationSamples) {
    throw ParameterError("normalization needs at least 10^6 samples");
  }
  const std::size_t dim = static_cast<std::size_t>(codec.channel_dimension());
  std::vector<Compensated> first(dim);
  std::vector<Compensated> second(dim);
  std::vector<double> s(dim);
  CounterRng rng(derive_stream_key(seed, 0, 0));
  for (std::size_t t = 0; t < samples; ++t) {
    codec.encode(draw_source(codec.source_kind(), rng), s);
    for (std::size_t i = 0; i < dim; ++i) {
      first[i].add(s[i]);
      second[i].add(s[i] * s[i]);
    }
  }
  NormalizationRecord rec;
  rec.samples = samples;
  const double count = static_cast<double>(samples);
  double total = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double mean = first[i].total() / count;
    const double var = std::max(0.0, second[i].total() / count - mean * mean);
    rec.mean.push_back(mean);
    rec.dimension_power.push_back(var);
    total += var;
  }
  rec.power = total / static_cast<double>(dim);
  if (!(rec.power > 0.0)) throw DomainError("degenerate constellation: zero power");
  return rec;
}

}  // namespace jscc
