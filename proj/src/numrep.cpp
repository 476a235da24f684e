#include "jscc/numrep.hpp"

#include <cmath>
#include <random>
#include <string>

#include "jscc/errors.hpp"

namespace jscc {

FixedPointSample::FixedPointSample(std::uint64_t mantissa, int precision)
    : mantissa_(mantissa), precision_(precision) {
  if (precision < 1 || precision > kMaxPrecision) {
    throw ParameterError("precision must be in [1, " + std::to_string(kMaxPrecision) + "]");
  }
  if (mantissa >> precision) {
    throw DomainError("mantissa has more than P significant bits");
  }
}

double FixedPointSample::value() const {
  return std::ldexp(static_cast<double>(mantissa_), -precision_);
}

FixedPointSample to_bits(double x, int precision) {
  if (!(x >= -0.5 && x < 0.5)) {
    throw DomainError("to_bits: x must lie in [-1/2, 1/2)");
  }
  if (precision < 1 || precision > kMaxPrecision) {
    throw ParameterError("to_bits: precision out of range");
  }
  const std::uint64_t top = (std::uint64_t{1} << precision) - 1;
  // x + 1/2 may round up onto a dyadic boundary; the exact comparison below
  // restores truncation.
  double scaled = std::floor(std::ldexp(x + 0.5, precision));
  std::uint64_t m = scaled >= static_cast<double>(top) ? top : static_cast<std::uint64_t>(scaled);
  while (m > 0 && x < std::ldexp(static_cast<double>(m), -precision) - 0.5) {
    --m;
  }
  return FixedPointSample(m, precision);
}

double from_bits(const FixedPointSample& sample, bool midpoint_fill) {
  double v = sample.value() - 0.5;
  if (midpoint_fill) {
    v += std::ldexp(1.0, -(sample.precision() + 1));
  }
  return v;
}

double eval_base_alpha(std::span<const std::uint8_t> digits, double alpha, BaseCheck check) {
  const bool ok = check == BaseCheck::allow_binary ? alpha >= 2.0 : alpha > 2.0;
  if (!ok || !std::isfinite(alpha)) {
    throw ParameterError("eval_base_alpha: base must exceed 2");
  }
  const double inv = 1.0 / alpha;
  double weight = 1.0;
  double sum = 0.0;
  double carry = 0.0;
  for (std::uint8_t d : digits) {
    weight *= inv;
    if (d == 0) continue;
    const double t = sum + weight;
    if (std::fabs(sum) >= weight) {
      carry += (sum - t) + weight;
    } else {
      carry += (weight - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

SplitSample split_integer(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("split_integer: non-finite input");
  }
  if (std::fabs(x) > 0x1.0p62) {
    throw DomainError("split_integer: magnitude exceeds integer range");
  }
  // For |x| >= 1/2 the candidate and x are within a factor of two, so the
  // subtraction is exact.
  double whole = std::round(x);
  double frac = x - whole;
  if (frac >= 0.5) {
    whole += 1.0;
    frac = x - whole;
  }
  return {static_cast<std::int64_t>(whole), frac};
}

double draw_source(SourceKind kind, CounterRng& rng) {
  if (kind == SourceKind::uniform) {
    return draw_uniform(rng);
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(rng);
}

}  // namespace jscc
