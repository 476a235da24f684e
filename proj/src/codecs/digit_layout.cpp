#include "jscc/codecs/digit_layout.hpp"

#include <cmath>

#include "jscc/errors.hpp"

namespace jscc {

int group_size(int group_index, int n, GroupingVariant variant) {
  if (variant == GroupingVariant::standard) {
    return group_index;
  }
  const int round = (group_index - 1) / n;
  const int i = (group_index - 1) % n + 1;
  return i + round * (n - 1);
}

std::vector<DigitGroup> scheme2_layout(int n, int group_count, GroupingVariant variant) {
  if (n < 2) {
    throw ParameterError("scheme2_layout: N must be at least 2");
  }
  std::vector<DigitGroup> groups;
  groups.reserve(static_cast<std::size_t>(group_count));
  std::vector<int> cursor(static_cast<std::size_t>(n), 1);
  int next_bit = 1;
  for (int l = 1; l <= group_count; ++l) {
    DigitGroup g;
    g.index = l;
    g.size = group_size(l, n, variant);
    g.source_begin = next_bit;
    g.dimension = (l - 1) % n;
    g.digit_begin = cursor[g.dimension];
    cursor[g.dimension] += g.size + 1;
    next_bit += g.size;
    groups.push_back(g);
  }
  return groups;
}

DigitLayout::DigitLayout(int n, int source_bits, GroupingVariant variant)
    : source_bits_(source_bits) {
  if (n < 2) {
    throw ParameterError("digit layout: N must be at least 2");
  }
  if (source_bits < 1 || source_bits > kMaxPrecision) {
    throw ParameterError("digit layout: source bit count out of range");
  }
  slots_.assign(static_cast<std::size_t>(n), {});
  depth_.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> cursor(static_cast<std::size_t>(n), 1);
  int next_bit = 1;
  for (int l = 1; next_bit <= source_bits; ++l) {
    DigitGroup g;
    g.index = l;
    g.size = std::min(group_size(l, n, variant), source_bits - next_bit + 1);
    g.source_begin = next_bit;
    g.dimension = (l - 1) % n;
    g.digit_begin = cursor[g.dimension];
    for (int j = 0; j < g.size; ++j) {
      slots_[g.dimension].push_back({g.digit_begin + j, g.source_begin + j});
    }
    cursor[g.dimension] += g.size + 1;
    depth_[g.dimension] = cursor[g.dimension] - 1;
    next_bit += g.size;
    groups_.push_back(g);
  }
  for (int d : depth_) {
    // Values are sums of powers of two; 53 consecutive positions keep them exact.
    if (d > 53) {
      throw CapacityError("digit layout: dimension depth exceeds double precision");
    }
  }
}

double DigitLayout::encode_dimension(std::uint64_t bits, int dim) const {
  std::uint64_t word = 0;
  const int depth = depth_[dim];
  for (const Slot& s : slots_[dim]) {
    const std::uint64_t b = (bits >> (source_bits_ - s.source_bit)) & 1U;
    word |= b << (depth - s.digit);
  }
  return std::ldexp(static_cast<double>(word), -depth);
}

double DigitLayout::max_value(int dim) const {
  double v = 0.0;
  for (const Slot& s : slots_[dim]) v += std::ldexp(1.0, -s.digit);
  return v;
}

std::vector<double> DigitLayout::slot_weights(int dim) const {
  std::vector<double> w;
  w.reserve(slots_[dim].size());
  for (const Slot& s : slots_[dim]) w.push_back(std::ldexp(1.0, -s.digit));
  return w;
}

std::uint64_t DigitLayout::assemble(const std::vector<std::uint64_t>& words) const {
  std::uint64_t bits = 0;
  for (std::size_t dim = 0; dim < slots_.size(); ++dim) {
    const auto& slots = slots_[dim];
    const std::size_t n = slots.size();
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint64_t b = (words[dim] >> (n - 1 - j)) & 1U;
      bits |= b << (source_bits_ - slots[j].source_bit);
    }
  }
  return bits;
}

}  // namespace jscc
