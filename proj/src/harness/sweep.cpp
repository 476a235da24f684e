#include <cmath>

#include "jscc/errors.hpp"
#include "jscc/harness.hpp"

namespace jscc {

void validate(const SweepPlan& plan) {
  for (std::size_t i = 1; i < plan.snr_grid_db.size(); ++i) {
    if (!(plan.snr_grid_db[i] > plan.snr_grid_db[i - 1])) {
      throw ParameterError("SNR grid must be strictly increasing");
    }
  }
  for (double v : plan.snr_grid_db) {
    if (!std::isfinite(v)) throw ParameterError("SNR grid values must be finite");
  }
  if (!(plan.rel_se_target > 0.0 && plan.rel_se_target < 1.0)) {
    throw ParameterError("rel_se_target must lie in (0, 1)");
  }
  if (plan.min_trials < 2 || plan.max_trials < plan.min_trials) {
    throw ParameterError("need 2 <= min_trials <= max_trials");
  }
}

SdrCurve sweep(const SweepPlan& plan, const std::string& label, CodecCache& cache,
               const ExecutionOptions& exec) {
  validate(plan);
  SdrCurve curve;
  curve.label = label;
  curve.codec = plan.codec;
  for (std::size_t i = 0; i < plan.snr_grid_db.size(); ++i) {
    NoisePoint point = make_noise_point(plan.snr_grid_db[i], plan.master_seed, i);
    const CodecSpec design = resolve_design(plan.codec, point.sigma, cache);
    const auto& entry = cache.get(design);
    point.gain = std::sqrt(entry.norm.power);
    SdrPoint p = estimate_point(*entry.codec, entry.norm, point, plan, exec);
    p.design = to_string(design);
    curve.points.push_back(std::move(p));
  }
  return curve;
}

}  // namespace jscc
