#include "jscc/analysis/bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "jscc/errors.hpp"

namespace jscc {

namespace {

constexpr std::pair<BoundKind, std::string_view> kNames[] = {
    {BoundKind::opta_slb, "opta_slb"},         {BoundKind::shift_map_upper, "shift_map_upper"},
    {BoundKind::shift_map_lower, "shift_map_lower"},     {BoundKind::scheme1, "scheme1"},
    {BoundKind::scheme2, "scheme2"}, {BoundKind::hybrid, "hybrid"},
    {BoundKind::type1, "type1"},     {BoundKind::type2, "type2"},
};

// Shape without the leading constant.
double shape(const BoundSpec& b, double sigma) {
  const double n = b.n;
  const double lg = -std::log(sigma);
  switch (b.kind) {
    case BoundKind::opta_slb:
      return 1.0 / (2.0 * std::numbers::pi * std::numbers::e * std::pow(1.0 + 1.0 / (sigma * sigma), n));
    case BoundKind::shift_map_upper:
    case BoundKind::shift_map_lower:
      return std::pow(sigma, 2.0 * n) * std::pow(lg, n - 1.0);
    case BoundKind::scheme1:
      return std::pow(sigma, 2.0 * scheme1_beta(b.n, b.alpha)) * std::pow(lg, n);
    case BoundKind::scheme2:
    case BoundKind::type2:
      return std::pow(sigma, 2.0 * n) * std::exp2(b.c2 * std::sqrt(-std::log2(sigma)));
    case BoundKind::hybrid: {
      const double m = b.m;
      return std::pow(sigma, 2.0 * n / m) * std::pow(lg, (n - m) / m);
    }
    case BoundKind::type1:
      return std::pow(sigma, 2.0 * n);
  }
  return 0.0;
}

void check(const BoundSpec& b, double sigma) {
  if (!(sigma > 0.0) || sigma > std::sqrt(0.5)) {
    throw DomainError("bound: sigma must lie in (0, 1/sqrt 2]");
  }
  if (b.n < 1) throw ParameterError("bound: N must be positive");
  if (b.kind == BoundKind::scheme1 && !(b.alpha > 2.0)) {
    throw ParameterError("bound: scheme1 needs alpha > 2");
  }
  if (b.kind == BoundKind::hybrid && (b.m < 1 || b.m > b.n)) {
    throw ParameterError("bound: hybrid needs 1 <= M <= N");
  }
}

}  // namespace

std::string_view bound_name(BoundKind kind) {
  for (auto [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (auto [k, n] : kNames) {
    if (n == name) return k;
  }
  throw ParameterError("unknown bound kind '" + std::string(name) + "'");
}

std::string describe(const BoundSpec& spec) {
  std::ostringstream os;
  os << bound_name(spec.kind) << " N=" << spec.n;
  if (spec.kind == BoundKind::scheme1) os << " alpha=" << spec.alpha;
  if (spec.kind == BoundKind::hybrid) os << " M=" << spec.m;
  return os.str();
}

double scheme1_beta(int n, double alpha) { return n * std::log(2.0) / std::log(alpha); }

double bound_eval(const BoundSpec& spec, double sigma) {
  check(spec, sigma);
  const double s = shape(spec, sigma);
  return spec.kind == BoundKind::opta_slb ? s : spec.c * s;
}

BoundSpec anchor_bound(BoundSpec spec, double sigma, double distortion) {
  check(spec, sigma);
  if (!(distortion > 0.0)) throw DomainError("anchor: distortion must be positive");
  spec.c = distortion / shape(spec, sigma);
  return spec;
}

}  // namespace jscc
