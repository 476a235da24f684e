#pragma once

#include "jscc/codecs/codec.hpp"

namespace jscc {

/// s_i = x for every dimension; decoded as the clamped sample mean.
class RepetitionCodec final : public Codec {
 public:
  explicit RepetitionCodec(const CodecSpec& spec);

  int channel_dimension() const override { return spec().n; }
  void encode(double x, std::span<double> s) const override;
  double decode(std::span<const double> y, const DecodeContext& ctx) const override;
};

}  // namespace jscc
