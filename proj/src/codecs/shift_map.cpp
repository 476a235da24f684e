#include "jscc/codecs/shift_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jscc/errors.hpp"

namespace jscc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 22;

double frac(double v) { return v - std::floor(v); }

std::vector<long long> cumulative_multipliers(const CodecSpec& spec) {
  std::vector<long long> out{1};
  for (int b : stage_factors(spec)) out.push_back(out.back() * b);
  return out;
}

}  // namespace

ShiftMapCodec::ShiftMapCodec(const CodecSpec& spec) : Codec(spec) {
  validate(spec);
  if (has_auto_design(spec)) throw ParameterError("shift map: stretch a must be resolved");
  multipliers_ = cumulative_multipliers(spec);
  segments_ = multipliers_.back();
  for (long long b : multipliers_) norm2_ += static_cast<double>(b) * static_cast<double>(b);
}

void ShiftMapCodec::encode(double x, std::span<double> s) const {
  double t = spec().labeling == ShiftLabeling::offset ? x + 0.5 : (x < 0.0 ? x + 1.0 : x);
  if (t >= 1.0) t = std::nextafter(1.0, 0.0);
  const auto stages = stage_factors(spec());
  s[0] = t;
  for (std::size_t i = 1; i < s.size(); ++i) {
    s[i] = frac(static_cast<double>(stages[i - 1]) * s[i - 1]);
  }
}

double ShiftMapCodec::source_from_position(double t) const {
  if (spec().labeling == ShiftLabeling::offset) return std::clamp(t - 0.5, -0.5, 0.5);
  if (t < 0.5) return t;
  return t >= 1.0 ? 0.0 : t - 1.0;
}

double ShiftMapCodec::decode(std::span<const double> y, const DecodeContext&) const {
  const std::size_t n = multipliers_.size();
  const double inv_segments = 1.0 / static_cast<double>(segments_);
  double best_dist = std::numeric_limits<double>::infinity();
  double best_x = 0.0;
  for (long long m = 0; m < segments_; ++m) {
    // On segment m, s_i = B_i t - c_i with c_i = floor(B_i m / B).
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const long long c = multipliers_[i] * m / segments_;
      num += static_cast<double>(multipliers_[i]) * (y[i] + static_cast<double>(c));
    }
    const double lo = static_cast<double>(m) * inv_segments;
    const double hi = static_cast<double>(m + 1) * inv_segments;
    const double t = std::clamp(num / norm2_, lo, hi);
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const long long c = multipliers_[i] * m / segments_;
      const double d = y[i] - (static_cast<double>(multipliers_[i]) * t - static_cast<double>(c));
      dist += d * d;
    }
    const double x = source_from_position(t);
    if (dist < best_dist || (dist == best_dist && x < best_x)) {
      best_dist = dist;
      best_x = x;
    }
  }
  return best_x;
}

SphericalCodec::SphericalCodec(const CodecSpec& spec) : Codec(spec) {
  validate(spec);
  if (has_auto_design(spec)) throw ParameterError("spherical: stretch a must be resolved");
  const auto mult = cumulative_multipliers(spec);
  for (long long b : mult) frequencies_.push_back(kTwoPi * static_cast<double>(b));
  scale_ = 1.0 / std::sqrt(static_cast<double>(spec.n));
  grid_size_ = static_cast<int>(std::max<long long>(1024, 32 * mult.back()));
  const std::size_t dim = 2 * frequencies_.size();
  if (static_cast<std::size_t>(grid_size_) * dim <= kMaxTableEntries) {
    table_.resize(static_cast<std::size_t>(grid_size_) * dim);
    for (int g = 0; g < grid_size_; ++g) {
      encode(static_cast<double>(g) / grid_size_ - 0.5,
             std::span<double>(table_.data() + static_cast<std::size_t>(g) * dim, dim));
    }
  }
}

void SphericalCodec::encode(double x, std::span<double> s) const {
  double u = x + 0.5;
  if (u >= 1.0) u -= 1.0;
  const std::size_t n = frequencies_.size();
  for (std::size_t j = 0; j < n; ++j) {
    const double phase = frequencies_[j] * u;
    s[j] = scale_ * std::cos(phase);
    s[n + j] = scale_ * std::sin(phase);
  }
}

double SphericalCodec::correlation(std::span<const double> y, double u) const {
  const std::size_t n = frequencies_.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double phase = frequencies_[j] * u;
    acc += y[j] * std::cos(phase) + y[n + j] * std::sin(phase);
  }
  return scale_ * acc;
}

double SphericalCodec::correlation_slope(std::span<const double> y, double u,
                                         double* curvature) const {
  const std::size_t n = frequencies_.size();
  double d1 = 0.0;
  double d2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = frequencies_[j];
    const double c = std::cos(w * u);
    const double s = std::sin(w * u);
    d1 += w * (-y[j] * s + y[n + j] * c);
    d2 += -w * w * (y[j] * c + y[n + j] * s);
  }
  *curvature = scale_ * d2;
  return scale_ * d1;
}

double SphericalCodec::decode(std::span<const double> y, const DecodeContext&) const {
  const std::size_t dim = 2 * frequencies_.size();
  const double step = 1.0 / grid_size_;
  int best = 0;
  double best_corr = -std::numeric_limits<double>::infinity();
  for (int g = 0; g < grid_size_; ++g) {
    double c = 0.0;
    if (!table_.empty()) {
      const double* row = table_.data() + static_cast<std::size_t>(g) * dim;
      for (std::size_t i = 0; i < dim; ++i) c += y[i] * row[i];
    } else {
      c = correlation(y, g * step);
    }
    if (c > best_corr) {
      best_corr = c;
      best = g;
    }
  }

  // Golden-section search for the maximum of <y, s(u)> on [u_g - step, u_g + step].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (best - 1) * step;
  double hi = (best + 1) * step;
  double p = hi - inv_phi * (hi - lo);
  double q = lo + inv_phi * (hi - lo);
  double fp = correlation(y, p);
  double fq = correlation(y, q);
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    if (fp >= fq) {
      hi = q;
      q = p;
      fq = fp;
      p = hi - inv_phi * (hi - lo);
      fp = correlation(y, p);
    } else {
      lo = p;
      p = q;
      fp = fq;
      q = lo + inv_phi * (hi - lo);
      fq = correlation(y, q);
    }
  }
  double u = 0.5 * (lo + hi);
  double f = correlation(y, u);
  const double grid_u = best * step;
  if (best_corr > f) {
    u = grid_u;
    f = best_corr;
  }

  // Newton polish on the stationarity condition. Correlation values cannot
  // resolve the peak below ~1e-8, the slope can.
  const double left = (best - 1) * step;
  const double right = (best + 1) * step;
  double polished = u;
  for (int it = 0; it < 8; ++it) {
    double d2 = 0.0;
    const double d1 = correlation_slope(y, polished, &d2);
    if (!(d2 < 0.0)) break;
    const double next = std::clamp(polished - d1 / d2, left, right);
    if (next == polished) break;
    polished = next;
  }
  if (correlation(y, polished) >= f - 1e-12 * (1.0 + std::fabs(f))) u = polished;

  u = frac(u);
  if (u >= 1.0) u = 0.0;
  return u - 0.5;
}

OptimalStretch shiftmap_optimal_a(double sigma, int n) {
  if (!(sigma > 0.0) || !(sigma < 1.0) || n < 1) {
    throw DomainError("shiftmap_optimal_a: sigma must lie in (0, 1) and N >= 1");
  }
  const double g = sigma * std::sqrt(-std::log(sigma));
  const double root_n = std::sqrt(static_cast<double>(n));
  OptimalStretch out;
  const double raw = std::floor(1.0 / (8.0 * root_n * g));
  if (g > 1.0 / (16.0 * root_n) || raw < 2.0) {
    out.a = 2;
    out.clamped = true;
    return out;
  }
  out.a = raw > 1e9 ? 1000000000 : static_cast<int>(raw);
  return out;
}

}  // namespace jscc
