#include "jscc/codecs/unbounded.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace jscc {

namespace {

CodecSpec inner_spec(CodecSpec spec) {
  spec.scheme = Scheme::scheme2;
  return spec;
}

}  // namespace

UnboundedCodec::UnboundedCodec(const CodecSpec& spec)
    : Codec(spec), inner_(inner_spec(spec)) {}

void UnboundedCodec::encode(double x, std::span<double> s) const {
  const SplitSample parts = split_integer(x);
  inner_.encode(parts.fractional_part, s);
  for (double& v : s) v -= 0.5;
  s[0] += static_cast<double>(parts.integer_part);
}

double UnboundedCodec::decode(std::span<const double> y, const DecodeContext& ctx) const {
  const std::size_t n = y.size();
  const double radius = 4.0 * ctx.sigma + 0.75;
  const double first = std::ceil(y[0] - radius);
  const double last = std::floor(y[0] + radius);
  std::vector<double> shifted(y.begin(), y.end());
  std::vector<double> candidate(n);
  double best_dist = std::numeric_limits<double>::infinity();
  double best = std::round(y[0]);
  for (double m = first; m <= last; m += 1.0) {
    shifted[0] = y[0] - m + 0.5;
    for (std::size_t i = 1; i < n; ++i) shifted[i] = y[i] + 0.5;
    const double x2 = inner_.decode(shifted, ctx);
    inner_.encode(x2, candidate);
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = shifted[i] - candidate[i];
      dist += d * d;
    }
    const double x = m + x2;
    if (dist < best_dist || (dist == best_dist && x < best)) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

}  // namespace jscc
