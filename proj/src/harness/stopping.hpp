#pragma once

#include <cstddef>
#include <limits>

#include "jscc/channel.hpp"
#include "jscc/harness.hpp"

namespace jscc::detail {

inline std::size_t batch_count(const SweepPlan& plan) {
  return (plan.max_trials + kBatchSize - 1) / kBatchSize;
}

inline std::size_t batch_trials(const SweepPlan& plan, std::size_t batch) {
  const std::size_t first = batch * kBatchSize;
  return std::min(kBatchSize, plan.max_trials - first);
}

/// True once the accumulated moments satisfy the stopping rule.
inline bool converged(const ErrorMoments& total, const SweepPlan& plan) {
  if (total.count < plan.min_trials) return false;
  const double d = total.mean();
  if (d == 0.0) return true;
  return total.std_err() <= plan.rel_se_target * d;
}

inline double source_variance(const Codec& codec) {
  return codec.source_kind() == SourceKind::gaussian ? 1.0 : kUniformVariance;
}

inline SdrPoint finish(const ErrorMoments& total, const NoisePoint& point,
                       const NormalizationRecord& norm, const SweepPlan& plan, double variance) {
  SdrPoint p;
  p.snr_db = point.snr_db;
  p.sigma = point.sigma;
  p.trials = total.count;
  p.distortion = total.mean();
  p.std_err = total.std_err();
  p.sdr_db = p.distortion > 0.0 ? sdr_db(p.distortion, variance) : std::numeric_limits<double>::infinity();
  p.capped = !converged(total, plan);
  p.power = norm.power;
  return p;
}

}  // namespace jscc::detail
