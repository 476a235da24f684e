#pragma once

#include <memory>
#include <span>

#include "jscc/codec_spec.hpp"
#include "jscc/numrep.hpp"

namespace jscc {

struct DecodeContext {
  /// Per-dimension noise std in the codec's native (pre-normalization) units.
  double sigma = 0.0;
};

/// Immutable encoder/decoder pair. Decoders are nearest-point (ML) and safe to
/// call concurrently.
class Codec {
 public:
  explicit Codec(CodecSpec spec) : spec_(std::move(spec)) {}
  virtual ~Codec() = default;

  Codec(const Codec&) = delete;
  Codec& operator=(const Codec&) = delete;

  const CodecSpec& spec() const { return spec_; }

  virtual int channel_dimension() const = 0;
  virtual SourceKind source_kind() const { return SourceKind::uniform; }
  virtual void encode(double x, std::span<double> s) const = 0;
  virtual double decode(std::span<const double> y, const DecodeContext& ctx) const = 0;

 private:
  CodecSpec spec_;
};

/// Builds the concrete codec. The spec must not carry auto-design fields.
std::unique_ptr<Codec> make_codec(const CodecSpec& spec);

}  // namespace jscc
