#include "jscc/codecs/digit_tree.hpp"

#include "jscc/errors.hpp"

namespace jscc {

GreedyDigitDecoder::GreedyDigitDecoder(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.size() > 63) {
    throw CapacityError("digit decoder supports at most 63 digits per coordinate");
  }
  thresholds_.resize(weights_.size());
  double tail = 0.0;
  for (std::size_t j = weights_.size(); j-- > 0;) {
    thresholds_[j] = 0.5 * (weights_[j] + tail);
    tail += weights_[j];
  }
}

std::uint64_t GreedyDigitDecoder::decode(double r) const {
  std::uint64_t word = 0;
  const std::size_t n = weights_.size();
  for (std::size_t j = 0; j < n; ++j) {
    word <<= 1;
    // Strict comparison sends exact ties to the zero subtree (smaller source value).
    if (r > thresholds_[j]) {
      word |= 1;
      r -= weights_[j];
    }
  }
  return word;
}

double GreedyDigitDecoder::value(std::uint64_t word) const {
  const std::size_t n = weights_.size();
  double v = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if ((word >> (n - 1 - j)) & 1U) v += weights_[j];
  }
  return v;
}

}  // namespace jscc
