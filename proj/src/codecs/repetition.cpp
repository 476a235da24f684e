#include "jscc/codecs/repetition.hpp"

#include <algorithm>

namespace jscc {

RepetitionCodec::RepetitionCodec(const CodecSpec& spec) : Codec(spec) { validate(spec); }

void RepetitionCodec::encode(double x, std::span<double> s) const {
  std::fill(s.begin(), s.end(), x);
}

double RepetitionCodec::decode(std::span<const double> y, const DecodeContext&) const {
  double sum = 0.0;
  for (double v : y) sum += v;
  return std::clamp(sum / static_cast<double>(y.size()), -0.5, 0.5);
}

}  // namespace jscc
