#pragma once

#include <cstdint>
#include <vector>

#include "jscc/codecs/codec.hpp"
#include "jscc/codecs/digit_layout.hpp"
#include "jscc/codecs/digit_tree.hpp"

namespace jscc {

/// w_i = 2^-i + 2^-k (k - i) for i = 1..k.
std::vector<double> type_weights(int k);

/// All 2^m sums of the first m weights, sorted by (value, pattern). Pattern
/// bit (m - i) selects w_i.
class WeightedConstellation {
 public:
  WeightedConstellation() = default;
  WeightedConstellation(const std::vector<double>& weights, int m);

  std::size_t size() const { return values_.size(); }
  double value(std::size_t idx) const { return values_[idx]; }
  std::uint32_t pattern(std::size_t idx) const { return patterns_[idx]; }

  /// Index of the point nearest r; ties go to the smaller pattern.
  std::size_t nearest(double r) const;

  /// Index of the interval [v, v + width] nearest r; ties go to the smaller
  /// pattern.
  std::size_t nearest_interval(double r, double width) const;

 private:
  std::vector<double> values_;
  std::vector<std::uint32_t> patterns_;
};

/// Type I: k weighted digital bits per coordinate, the last coordinate
/// carrying k - 1 bits plus the analog remainder scaled by 2^-(k+1).
/// Transmitted as s - 1.
class Type1Codec final : public Codec {
 public:
  explicit Type1Codec(const CodecSpec& spec);

  int channel_dimension() const override { return spec().n; }
  void encode(double x, std::span<double> s) const override;
  double decode(std::span<const double> y, const DecodeContext& ctx) const override;

  /// Encoder output before the -1 shift.
  void encode_raw(double x, std::span<double> s) const;

 private:
  int k_ = 1;
  std::vector<double> weights_;
  WeightedConstellation full_;
  WeightedConstellation partial_;
};

/// Type II: k weighted digital bits per coordinate plus a Scheme II
/// remainder scaled by 2^-(k+1). Decoded in two stages.
class Type2Codec final : public Codec {
 public:
  explicit Type2Codec(const CodecSpec& spec);

  int channel_dimension() const override { return spec().n; }
  void encode(double x, std::span<double> s) const override;
  double decode(std::span<const double> y, const DecodeContext& ctx) const override;

  const DigitLayout& residual_layout() const { return layout_; }

 private:
  int k_ = 1;
  std::vector<double> weights_;
  WeightedConstellation digital_;
  DigitLayout layout_;
  std::vector<GreedyDigitDecoder> residual_decoders_;
  std::vector<double> center_offset_;  // 2^-(k+1) * max residual / 2, per dimension
};

}  // namespace jscc
