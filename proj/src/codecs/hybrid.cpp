#include "jscc/codecs/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "jscc/errors.hpp"

namespace jscc {

namespace {

void require_level(const CodecSpec& spec) {
  validate(spec);
  if (has_auto_design(spec)) throw ParameterError("design level k must be resolved");
}

// Source bit b_{(i-1)N + j} for level i (1-based) and dimension j (0-based).
int bit_index(int level, int dim, int n) { return (level - 1) * n + dim + 1; }

}  // namespace

std::vector<double> type_weights(int k) {
  if (k < 1 || k > kMaxDesignLevel) throw CapacityError("design level out of range");
  std::vector<double> w;
  for (int i = 1; i <= k; ++i) {
    w.push_back(std::ldexp(1.0, -i) + std::ldexp(static_cast<double>(k - i), -k));
  }
  return w;
}

WeightedConstellation::WeightedConstellation(const std::vector<double>& weights, int m) {
  const std::size_t count = std::size_t{1} << m;
  std::vector<double> values(count);
  for (std::size_t p = 0; p < count; ++p) {
    double v = 0.0;
    for (int i = 0; i < m; ++i) {
      if ((p >> (m - 1 - i)) & 1U) v += weights[static_cast<std::size_t>(i)];
    }
    values[p] = v;
  }
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
  values_.reserve(count);
  for (std::uint32_t p : order) values_.push_back(values[p]);
  patterns_ = std::move(order);
}

std::size_t WeightedConstellation::nearest(double r) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), r);
  std::size_t hi = static_cast<std::size_t>(it - values_.begin());
  if (hi == values_.size()) {
    hi = values_.size() - 1;
    while (hi > 0 && values_[hi - 1] == values_[hi]) --hi;
    return hi;
  }
  if (hi == 0) return 0;
  std::size_t lo = hi - 1;
  while (lo > 0 && values_[lo - 1] == values_[lo]) --lo;
  const double dlo = r - values_[lo];
  const double dhi = values_[hi] - r;
  if (dlo < dhi) return lo;
  if (dhi < dlo) return hi;
  return patterns_[lo] < patterns_[hi] ? lo : hi;
}

std::size_t WeightedConstellation::nearest_interval(double r, double width) const {
  // Distance max(0, v - r, r - width - v) is flat on v in [r - width, r].
  auto it = std::lower_bound(values_.begin(), values_.end(), r - width);
  std::size_t idx = static_cast<std::size_t>(it - values_.begin());
  std::size_t best = values_.size();
  double best_dist = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t i) {
    const double v = values_[i];
    const double d = std::max({0.0, v - r, r - width - v});
    if (d < best_dist || (d == best_dist && patterns_[i] < patterns_[best])) {
      best_dist = d;
      best = i;
    }
  };
  if (idx > 0) {
    std::size_t lo = idx - 1;
    while (lo > 0 && values_[lo - 1] == values_[lo]) --lo;
    for (std::size_t i = lo; i < idx; ++i) consider(i);
  }
  for (std::size_t i = idx; i < values_.size(); ++i) {
    consider(i);
    if (values_[i] > r) {
      while (i + 1 < values_.size() && values_[i + 1] == values_[i]) consider(++i);
      break;
    }
  }
  return best;
}

Type1Codec::Type1Codec(const CodecSpec& spec) : Codec(spec) {
  require_level(spec);
  k_ = spec.k;
  weights_ = type_weights(k_);
  full_ = WeightedConstellation(weights_, k_);
  partial_ = WeightedConstellation(weights_, k_ - 1);
}

void Type1Codec::encode_raw(double x, std::span<double> s) const {
  const int n = spec().n;
  const int digital_bits = n * k_ - 1;
  const FixedPointSample bits = to_bits(x, digital_bits);
  const double cell = std::ldexp(static_cast<double>(bits.mantissa()), -digital_bits) - 0.5;
  double frac = std::ldexp(x - cell, digital_bits);
  frac = std::clamp(frac, 0.0, std::nextafter(1.0, 0.0));
  for (int dim = 0; dim < n; ++dim) {
    const int levels = dim + 1 < n ? k_ : k_ - 1;
    double v = 0.0;
    for (int i = 1; i <= levels; ++i) {
      if (bits.bit(bit_index(i, dim, n))) v += weights_[static_cast<std::size_t>(i - 1)];
    }
    s[dim] = v;
  }
  s[n - 1] += std::ldexp(frac, -k_ - 1);
}

void Type1Codec::encode(double x, std::span<double> s) const {
  encode_raw(x, s);
  for (double& v : s) v -= 1.0;
}

double Type1Codec::decode(std::span<const double> y, const DecodeContext&) const {
  const int n = spec().n;
  const int digital_bits = n * k_ - 1;
  std::uint64_t mantissa = 0;
  auto place = [&](std::uint32_t pattern, int levels, int dim) {
    for (int i = 1; i <= levels; ++i) {
      const std::uint64_t b = (pattern >> (levels - i)) & 1U;
      mantissa |= b << (digital_bits - bit_index(i, dim, n));
    }
  };
  for (int dim = 0; dim + 1 < n; ++dim) {
    place(full_.pattern(full_.nearest(y[dim] + 1.0)), k_, dim);
  }
  const double width = std::ldexp(1.0, -k_ - 1);
  const double last = y[n - 1] + 1.0;
  const std::size_t idx = partial_.nearest_interval(last, width);
  place(partial_.pattern(idx), k_ - 1, n - 1);
  const double frac = std::clamp((last - partial_.value(idx)) / width, 0.0, 1.0);
  const double cell = std::ldexp(1.0, -digital_bits);
  const double x = (static_cast<double>(mantissa) + frac) * cell - 0.5;
  // Stay inside the decoded cell so the digital bits are kept as decoded.
  const double upper = static_cast<double>(mantissa + 1) * cell - 0.5;
  return x < upper ? x : std::nextafter(upper, -1.0);
}

Type2Codec::Type2Codec(const CodecSpec& spec) : Codec(spec) {
  require_level(spec);
  k_ = spec.k;
  weights_ = type_weights(k_);
  digital_ = WeightedConstellation(weights_, k_);
  layout_ = DigitLayout(spec.n, spec.precision - spec.n * k_, spec.grouping);
  const double scale = std::ldexp(1.0, -k_ - 1);
  for (int dim = 0; dim < spec.n; ++dim) {
    residual_decoders_.emplace_back(layout_.slot_weights(dim));
    center_offset_.push_back(0.5 * scale * layout_.max_value(dim));
  }
}

void Type2Codec::encode(double x, std::span<double> s) const {
  const int n = spec().n;
  const int precision = spec().precision;
  const FixedPointSample bits = to_bits(x, precision);
  const int residual_bits = precision - n * k_;
  const std::uint64_t residual = bits.mantissa() & ((std::uint64_t{1} << residual_bits) - 1);
  for (int dim = 0; dim < n; ++dim) {
    double v = 0.0;
    for (int i = 1; i <= k_; ++i) {
      if (bits.bit(bit_index(i, dim, n))) v += weights_[static_cast<std::size_t>(i - 1)];
    }
    s[dim] = v + std::ldexp(layout_.encode_dimension(residual, dim), -k_ - 1);
  }
}

double Type2Codec::decode(std::span<const double> y, const DecodeContext&) const {
  const int n = spec().n;
  const int precision = spec().precision;
  std::uint64_t mantissa = 0;
  std::vector<std::uint64_t> words(static_cast<std::size_t>(n));
  for (int dim = 0; dim < n; ++dim) {
    const std::size_t idx = digital_.nearest(y[dim] - center_offset_[dim]);
    const std::uint32_t pattern = digital_.pattern(idx);
    for (int i = 1; i <= k_; ++i) {
      const std::uint64_t b = (pattern >> (k_ - i)) & 1U;
      mantissa |= b << (precision - bit_index(i, dim, n));
    }
    const double r = std::ldexp(y[dim] - digital_.value(idx), k_ + 1);
    words[static_cast<std::size_t>(dim)] = residual_decoders_[dim].decode(r);
  }
  mantissa |= layout_.assemble(words);
  return from_bits(FixedPointSample(mantissa, precision), true);
}

}  // namespace jscc
