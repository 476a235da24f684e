#include <algorithm>
#include <cmath>
#include <vector>

#include "jscc/codecs/shift_map.hpp"
#include "jscc/errors.hpp"
#include "jscc/harness.hpp"

namespace jscc {

namespace {

int max_level(const CodecSpec& spec) {
  const int by_precision = spec.scheme == Scheme::type1 ? (spec.precision + 1) / spec.n
                                                        : (spec.precision - 1) / spec.n;
  return std::min(kMaxDesignLevel, by_precision);
}

}  // namespace

const CodecCache::Entry& CodecCache::get(const CodecSpec& spec) {
  const std::string key = to_string(spec);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(key);
  if (it != entries_.end()) return *it->second;
  auto entry = std::make_unique<Entry>();
  std::shared_ptr<const Codec> codec = make_codec(spec);
  entry->norm = measure_normalization(*codec);
  entry->codec = std::move(codec);
  return *entries_.emplace(key, std::move(entry)).first->second;
}

CodecSpec design_for_native_sigma(const CodecSpec& spec, double native_sigma) {
  if (!has_auto_design(spec)) return spec;
  if (!(native_sigma > 0.0)) throw DomainError("design: sigma must be positive");
  CodecSpec out = spec;
  switch (spec.scheme) {
    case Scheme::type1:
    case Scheme::type2: {
      const double level = std::floor(-std::log2(native_sigma));
      out.k = static_cast<int>(std::clamp(level, 1.0, static_cast<double>(max_level(spec))));
      break;
    }
    case Scheme::shift_map:
    case Scheme::spherical: {
      out.a = native_sigma < 1.0 ? shiftmap_optimal_a(native_sigma, spec.n).a : 2;
      break;
    }
    default:
      break;
  }
  validate(out);
  return out;
}

CodecSpec resolve_design(const CodecSpec& spec, double sigma, CodecCache& cache) {
  if (!has_auto_design(spec)) return spec;
  CodecSpec current = design_for_native_sigma(spec, sigma * std::sqrt(1.0 / 12.0));
  std::vector<std::string> seen{to_string(current)};
  for (int it = 0; it < 16; ++it) {
    const double power = cache.get(current).norm.power;
    CodecSpec next = design_for_native_sigma(spec, sigma * std::sqrt(power));
    const std::string key = to_string(next);
    if (next == current) return current;
    // A cycle between designs is settled by its first member.
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) return next;
    seen.push_back(key);
    current = next;
  }
  return current;
}

}  // namespace jscc
