#include "jscc/codecs/fractal.hpp"
#include "jscc/codecs/hybrid.hpp"
#include "jscc/codecs/repetition.hpp"
#include "jscc/codecs/shift_map.hpp"
#include "jscc/codecs/unbounded.hpp"
#include "jscc/errors.hpp"

namespace jscc {

std::unique_ptr<Codec> make_codec(const CodecSpec& spec) {
  if (has_auto_design(spec)) {
    throw ParameterError("codec '" + to_string(spec) + "' has an unresolved design parameter");
  }
  switch (spec.scheme) {
    case Scheme::repetition: return std::make_unique<RepetitionCodec>(spec);
    case Scheme::shift_map: return std::make_unique<ShiftMapCodec>(spec);
    case Scheme::spherical: return std::make_unique<SphericalCodec>(spec);
    case Scheme::scheme1: return std::make_unique<Scheme1Codec>(spec);
    case Scheme::scheme2: return std::make_unique<Scheme2Codec>(spec);
    case Scheme::type1: return std::make_unique<Type1Codec>(spec);
    case Scheme::type2: return std::make_unique<Type2Codec>(spec);
    case Scheme::unbounded: return std::make_unique<UnboundedCodec>(spec);
  }
  throw ParameterError("unknown scheme");
}

}  // namespace jscc
