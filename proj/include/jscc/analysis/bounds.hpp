#pragma once

#include <string>
#include <string_view>

namespace jscc {

enum class BoundKind {
  opta_slb,
  shift_map_upper,
  shift_map_lower,
  scheme1,
  scheme2,
  hybrid,
  type1,
  type2,
};

/// A theoretical distortion curve D(sigma). The constants c, c1, c2 are free;
/// `anchor_bound` fixes c (or c1) from a measured point.
struct BoundSpec {
  BoundKind kind = BoundKind::opta_slb;
  int n = 2;
  double alpha = 4.0;  // scheme1
  int m = 1;           // hybrid: dimensions carrying the digital part
  int k = 1;           // type1 / type2 design level (documentation only)
  double c = 1.0;
  double c2 = 1.0;     // scheme2 / type2 exponent constant
};

std::string_view bound_name(BoundKind kind);
BoundKind parse_bound_kind(std::string_view name);
std::string describe(const BoundSpec& spec);

/// N log 2 / log alpha.
double scheme1_beta(int n, double alpha);

/// D(sigma) for sigma in (0, 1/sqrt 2]. The OPTA curve ignores `c`.
double bound_eval(const BoundSpec& spec, double sigma);

/// Returns `spec` with its constant chosen so that bound_eval equals
/// `distortion` at `sigma`.
BoundSpec anchor_bound(BoundSpec spec, double sigma, double distortion);

}  // namespace jscc
