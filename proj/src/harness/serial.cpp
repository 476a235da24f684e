#include "jscc/harness.hpp"
#include "stopping.hpp"

namespace jscc {

SdrPoint estimate_point_serial(const Codec& codec, const NormalizationRecord& norm,
                               const NoisePoint& point, const SweepPlan& plan) {
  validate(plan);
  ErrorMoments total;
  const std::size_t batches = detail::batch_count(plan);
  for (std::size_t b = 0; b < batches; ++b) {
    total.merge(run_trials(codec, norm, point, b * kBatchSize, detail::batch_trials(plan, b)));
    if (detail::converged(total, plan)) break;
  }
  return detail::finish(total, point, norm, plan, detail::source_variance(codec));
}

}  // namespace jscc
