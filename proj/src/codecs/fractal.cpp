#include "jscc/codecs/fractal.hpp"

#include <array>

#include "jscc/errors.hpp"

namespace jscc {

namespace {

// Number of source bits dealt to dimension `dim` (0-based) out of P.
int scheme1_digits(int precision, int n, int dim) { return (precision - dim + n - 1) / n; }

}  // namespace

Scheme1Codec::Scheme1Codec(const CodecSpec& spec) : Codec(spec) {
  validate(spec);
  const double inv = 1.0 / spec.alpha;
  for (int dim = 0; dim < spec.n; ++dim) {
    std::vector<double> w;
    double weight = 1.0;
    for (int d = 0; d < scheme1_digits(spec.precision, spec.n, dim); ++d) {
      weight *= inv;
      w.push_back(weight);
    }
    decoders_.emplace_back(std::move(w));
  }
}

void Scheme1Codec::encode(double x, std::span<double> s) const {
  const int n = spec().n;
  const FixedPointSample bits = to_bits(x, spec().precision);
  std::array<std::uint8_t, 64> digits{};
  for (int dim = 0; dim < n; ++dim) {
    const int count = scheme1_digits(spec().precision, n, dim);
    for (int d = 0; d < count; ++d) {
      digits[static_cast<std::size_t>(d)] = static_cast<std::uint8_t>(bits.bit(d * n + dim + 1));
    }
    s[dim] = eval_base_alpha(std::span<const std::uint8_t>(digits.data(), count), spec().alpha);
  }
}

std::vector<std::uint64_t> Scheme1Codec::decode_digits(std::span<const double> y) const {
  std::vector<std::uint64_t> words(decoders_.size());
  for (std::size_t dim = 0; dim < decoders_.size(); ++dim) words[dim] = decoders_[dim].decode(y[dim]);
  return words;
}

double Scheme1Codec::decode(std::span<const double> y, const DecodeContext&) const {
  const int n = spec().n;
  const int precision = spec().precision;
  const auto words = decode_digits(y);
  std::uint64_t mantissa = 0;
  for (int dim = 0; dim < n; ++dim) {
    const int count = static_cast<int>(decoders_[dim].size());
    for (int d = 0; d < count; ++d) {
      const std::uint64_t b = (words[dim] >> (count - 1 - d)) & 1U;
      const int j = d * n + dim + 1;
      mantissa |= b << (precision - j);
    }
  }
  return from_bits(FixedPointSample(mantissa, precision), true);
}

Scheme2Codec::Scheme2Codec(const CodecSpec& spec) : Codec(spec) {
  validate(spec);
  layout_ = DigitLayout(spec.n, spec.precision, spec.grouping);
  for (int dim = 0; dim < spec.n; ++dim) decoders_.emplace_back(layout_.slot_weights(dim));
}

void Scheme2Codec::encode(double x, std::span<double> s) const {
  const std::uint64_t bits = to_bits(x, spec().precision).mantissa();
  for (int dim = 0; dim < spec().n; ++dim) s[dim] = layout_.encode_dimension(bits, dim);
}

std::vector<std::uint64_t> Scheme2Codec::decode_digits(std::span<const double> y) const {
  std::vector<std::uint64_t> words(decoders_.size());
  for (std::size_t dim = 0; dim < decoders_.size(); ++dim) words[dim] = decoders_[dim].decode(y[dim]);
  return words;
}

double Scheme2Codec::decode(std::span<const double> y, const DecodeContext&) const {
  const std::uint64_t bits = layout_.assemble(decode_digits(y));
  return from_bits(FixedPointSample(bits, spec().precision), true);
}

}  // namespace jscc
