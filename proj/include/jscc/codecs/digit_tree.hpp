#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace jscc {

/// Nearest-point decoder for one coordinate of the form sum_j c_j w_j with
/// c_j in {0, 1} and strictly decreasing weights whose digit subtrees are
/// disjoint (base alpha > 2, or base 2). Greedy most-significant-first
/// decisions against the midpoint of the gap between the two subtrees.
class GreedyDigitDecoder {
 public:
  GreedyDigitDecoder() = default;
  explicit GreedyDigitDecoder(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }

  /// Digit j (0-based) is bit (size - 1 - j) of the result, so the returned
  /// word reads most-significant-digit first.
  std::uint64_t decode(double r) const;

  /// Value of a digit word in the same convention.
  double value(std::uint64_t word) const;

 private:
  std::vector<double> weights_;
  std::vector<double> thresholds_;
};

}  // namespace jscc
