#pragma once

#include <cstdint>
#include <span>

#include "jscc/rng.hpp"

namespace jscc {

inline constexpr int kDefaultPrecision = 48;
inline constexpr int kMaxPrecision = 62;

/// A source value x in [-1/2, 1/2) held as the first P binary digits of
/// x + 1/2 = (0.b1 b2 ... bP)_2. Digit b1 is the 2^-1 digit.
class FixedPointSample {
 public:
  FixedPointSample() = default;
  FixedPointSample(std::uint64_t mantissa, int precision);

  int precision() const { return precision_; }
  /// Integer b1 b2 ... bP read as a P-bit number (b1 most significant).
  std::uint64_t mantissa() const { return mantissa_; }

  /// Digit b_i for 1 <= i <= P.
  int bit(int i) const {
    return static_cast<int>((mantissa_ >> (precision_ - i)) & 1U);
  }

  /// Sum of b_i 2^-i, always in [0, 1).
  double value() const;

  friend bool operator==(const FixedPointSample&, const FixedPointSample&) = default;

 private:
  std::uint64_t mantissa_ = 0;
  int precision_ = kDefaultPrecision;
};

struct SplitSample {
  std::int64_t integer_part = 0;
  double fractional_part = 0.0;  // in [-1/2, 1/2)
};

enum class SourceKind { uniform, gaussian };

/// Truncated (never rounded) binary expansion of x + 1/2.
FixedPointSample to_bits(double x, int precision = kDefaultPrecision);

/// Sum b_i 2^-i - 1/2, plus 2^-(P+1) when midpoint_fill is set.
double from_bits(const FixedPointSample& sample, bool midpoint_fill);

enum class BaseCheck { strict, allow_binary };

/// Sum_{i>=1} digits[i-1] alpha^-i, most significant first, with Neumaier
/// compensation. Requires alpha > 2 unless `allow_binary` (alpha == 2).
double eval_base_alpha(std::span<const std::uint8_t> digits, double alpha,
                       BaseCheck check = BaseCheck::strict);

/// Nearest-integer split x = x1 + x2 with x2 in [-1/2, 1/2); exact.
SplitSample split_integer(double x);

/// Uniform on [-1/2, 1/2) built from 53 random bits.
template <typename Rng>
double draw_uniform(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
}

double draw_source(SourceKind kind, CounterRng& rng);

}  // namespace jscc
