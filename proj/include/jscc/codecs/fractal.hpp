#pragma once

#include <cstdint>
#include <vector>

#include "jscc/codecs/codec.hpp"
#include "jscc/codecs/digit_layout.hpp"
#include "jscc/codecs/digit_tree.hpp"

namespace jscc {

/// Scheme I: source bits dealt round-robin to N coordinates, each read as a
/// base-alpha expansion.
class Scheme1Codec final : public Codec {
 public:
  explicit Scheme1Codec(const CodecSpec& spec);

  int channel_dimension() const override { return spec().n; }
  void encode(double x, std::span<double> s) const override;
  double decode(std::span<const double> y, const DecodeContext& ctx) const override;

  /// Greedy digit words per dimension (first digit most significant).
  std::vector<std::uint64_t> decode_digits(std::span<const double> y) const;
  const GreedyDigitDecoder& digit_decoder(int dim) const { return decoders_[dim]; }

 private:
  std::vector<GreedyDigitDecoder> decoders_;
};

/// Scheme II: growing bit groups with one separator zero after each group,
/// coordinates read in base 2.
class Scheme2Codec final : public Codec {
 public:
  explicit Scheme2Codec(const CodecSpec& spec);

  int channel_dimension() const override { return spec().n; }
  void encode(double x, std::span<double> s) const override;
  double decode(std::span<const double> y, const DecodeContext& ctx) const override;

  std::vector<std::uint64_t> decode_digits(std::span<const double> y) const;
  const DigitLayout& layout() const { return layout_; }
  const GreedyDigitDecoder& digit_decoder(int dim) const { return decoders_[dim]; }

 private:
  DigitLayout layout_;
  std::vector<GreedyDigitDecoder> decoders_;
};

}  // namespace jscc
