#include <omp.h>

#include <algorithm>
#include <vector>

#include "jscc/errors.hpp"
#include "jscc/harness.hpp"
#include "stopping.hpp"

namespace jscc {

SdrPoint estimate_point(const Codec& codec, const NormalizationRecord& norm,
                        const NoisePoint& point, const SweepPlan& plan,
                        const ExecutionOptions& exec) {
  validate(plan);
  const int workers = exec.workers > 0 ? exec.workers : omp_get_max_threads();
  const std::size_t batches = detail::batch_count(plan);
  // Enough batches to reach min_trials in the first round, then a few per worker.
  const std::size_t first_round = (plan.min_trials + kBatchSize - 1) / kBatchSize;
  const std::size_t round = std::max<std::size_t>(first_round, 4 * static_cast<std::size_t>(workers));

  ErrorMoments total;
  std::vector<ErrorMoments> results;
  std::size_t next = 0;
  while (next < batches) {
    const std::size_t stop = std::min(batches, next + (next == 0 ? first_round : round));
    results.assign(stop - next, ErrorMoments{});
    const auto lo = static_cast<std::ptrdiff_t>(next);
    const auto hi = static_cast<std::ptrdiff_t>(stop);
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::ptrdiff_t b = lo; b < hi; ++b) {
      const auto batch = static_cast<std::size_t>(b);
      results[batch - next] =
          run_trials(codec, norm, point, batch * kBatchSize, detail::batch_trials(plan, batch));
    }
    for (const ErrorMoments& m : results) {
      total.merge(m);
      if (detail::converged(total, plan)) return detail::finish(total, point, norm, plan, detail::source_variance(codec));
    }
    next = stop;
  }
  return detail::finish(total, point, norm, plan, detail::source_variance(codec));
}

}  // namespace jscc
