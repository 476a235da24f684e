#pragma once

#include "jscc/codecs/codec.hpp"
#include "jscc/codecs/fractal.hpp"

namespace jscc {

/// Real-valued source wrapper around Scheme II: x = x1 + x2 with integer x1,
/// sent as (x1 + s1 - 1/2, s2 - 1/2, ..., sN - 1/2).
class UnboundedCodec final : public Codec {
 public:
  explicit UnboundedCodec(const CodecSpec& spec);

  int channel_dimension() const override { return spec().n; }
  SourceKind source_kind() const override { return SourceKind::gaussian; }
  void encode(double x, std::span<double> s) const override;

  /// Tries every integer within 4 sigma + 3/4 of y_1, keeps the nearest
  /// reconstruction.
  double decode(std::span<const double> y, const DecodeContext& ctx) const override;

  const Scheme2Codec& inner() const { return inner_; }

 private:
  Scheme2Codec inner_;
};

}  // namespace jscc
