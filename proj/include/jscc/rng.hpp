#pragma once

#include <cstdint>
#include <limits>

namespace jscc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Keyed stream for one Monte Carlo trial. The key is derived from
/// (master seed, point index, trial index) only, so a trial draws the same
/// numbers no matter which worker runs it or in which order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

constexpr std::uint64_t derive_stream_key(std::uint64_t master_seed, std::uint64_t point_index,
                                          std::uint64_t trial_index) {
  std::uint64_t k = mix64(master_seed + 0x6a09e667f3bcc909ULL);
  k = mix64(k ^ (point_index * 0xd1b54a32d192ed03ULL + 0xbb67ae8584caa73bULL));
  return mix64(k ^ (trial_index * 0x8cb92ba72f3d8dd7ULL + 0x3c6ef372fe94f82bULL));
}

}  // namespace jscc
