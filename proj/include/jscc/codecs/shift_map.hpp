#pragma once

#include <vector>

#include "jscc/codecs/codec.hpp"

namespace jscc {

/// Shift-map code: s_1 is the source position in [0, 1), s_{i+1} = b_i s_i
/// (mod 1). The constellation is prod(b_i) parallel segments of the unit
/// hypercube.
class ShiftMapCodec final : public Codec {
 public:
  explicit ShiftMapCodec(const CodecSpec& spec);

  int channel_dimension() const override { return spec().n; }
  void encode(double x, std::span<double> s) const override;

  /// Orthogonal projection onto every segment; nearest wins, ties go to the
  /// smaller source value.
  double decode(std::span<const double> y, const DecodeContext& ctx) const override;

  long long segment_count() const { return segments_; }

  /// Source value for first coordinate t in [0, 1].
  double source_from_position(double t) const;

 private:
  std::vector<long long> multipliers_;  // B_1 = 1, B_{i+1} = B_i b_i
  double norm2_ = 0.0;
  long long segments_ = 1;
};

/// Spherical shift map: s = N^{-1/2} (cos 2 pi B_j x', ..., sin 2 pi B_j x')
/// with x' = x + 1/2, giving 2N channel components of unit total norm.
class SphericalCodec final : public Codec {
 public:
  explicit SphericalCodec(const CodecSpec& spec);

  int channel_dimension() const override { return 2 * spec().n; }
  void encode(double x, std::span<double> s) const override;

  /// Grid search over `grid_size()` positions, golden-section refinement on
  /// the winning cell +-1 step, then a guarded Newton polish.
  double decode(std::span<const double> y, const DecodeContext& ctx) const override;

  int grid_size() const { return grid_size_; }

  /// <y, s(u)> for position u in [0, 1); maximizing it minimizes distance.
  double correlation(std::span<const double> y, double u) const;

 private:
  double correlation_slope(std::span<const double> y, double u, double* curvature) const;

  std::vector<double> frequencies_;  // 2 pi B_j
  double scale_ = 1.0;
  int grid_size_ = 1024;
  std::vector<double> table_;        // grid_size_ x 2N, empty when too large
};

struct OptimalStretch {
  int a = 2;
  /// Set when sigma sqrt(-log sigma) > 1/(16 sqrt N) and a = 2 was returned.
  bool clamped = false;
};

/// a = floor(1 / (8 sqrt(N) sigma sqrt(-log sigma))), at least 2.
OptimalStretch shiftmap_optimal_a(double sigma, int n);

}  // namespace jscc
