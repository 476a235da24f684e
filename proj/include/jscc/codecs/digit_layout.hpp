#pragma once

#include <cstdint>
#include <vector>

#include "jscc/codec_spec.hpp"

namespace jscc {

/// One Scheme II group: `size` consecutive source bits starting at
/// `source_begin` (1-based), written to `dimension` (0-based) at digit
/// positions digit_begin .. digit_begin + size - 1, followed by one
/// separator zero.
struct DigitGroup {
  int index = 0;  // l, 1-based
  int source_begin = 0;
  int size = 0;
  int dimension = 0;
  int digit_begin = 0;
};

/// Group size for group l (1-based) under the given rule.
int group_size(int group_index, int n, GroupingVariant variant);

/// The first `group_count` groups, untruncated.
std::vector<DigitGroup> scheme2_layout(int n, int group_count, GroupingVariant variant);

/// Groups covering exactly `source_bits` bits (the last group may be cut
/// short), plus per-dimension lookups used by the encoders and decoders.
class DigitLayout {
 public:
  struct Slot {
    int digit = 0;       // 1-based digit position within the dimension
    int source_bit = 0;  // 1-based index into the source bit stream
  };

  DigitLayout() = default;
  DigitLayout(int n, int source_bits, GroupingVariant variant);

  int dimensions() const { return static_cast<int>(slots_.size()); }
  int source_bits() const { return source_bits_; }
  const std::vector<DigitGroup>& groups() const { return groups_; }

  /// Free (non-separator) digit slots of dimension `dim`, in digit order.
  const std::vector<Slot>& slots(int dim) const { return slots_[dim]; }

  /// Total digit count of `dim`, separators included.
  int depth(int dim) const { return depth_[dim]; }

  /// Binary value of dimension `dim` given source bits b_{first} ... read
  /// from `bits` (source bit s is bit (source_bits - s) of the word).
  double encode_dimension(std::uint64_t bits, int dim) const;

  /// Largest value dimension `dim` can take (all free digits set).
  double max_value(int dim) const;

  /// 2^-digit for each free slot of `dim`, in digit order.
  std::vector<double> slot_weights(int dim) const;

  /// Inverse of the per-dimension split: words[dim] holds one bit per free
  /// slot, first slot most significant. Returns the source bit word.
  std::uint64_t assemble(const std::vector<std::uint64_t>& words) const;

 private:
  int source_bits_ = 0;
  std::vector<DigitGroup> groups_;
  std::vector<std::vector<Slot>> slots_;
  std::vector<int> depth_;
};

}  // namespace jscc
