#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "jscc/channel.hpp"
#include "jscc/codec_spec.hpp"
#include "jscc/codecs/codec.hpp"
#include "jscc/codecs/normalization.hpp"

namespace jscc {

inline constexpr std::size_t kBatchSize = 4096;

struct SweepPlan {
  CodecSpec codec;
  std::vector<double> snr_grid_db;
  std::size_t min_trials = 100000;
  std::size_t max_trials = 10000000;
  double rel_se_target = 0.1;
  std::uint64_t master_seed = 1;
};

/// Throws ParameterError unless the grid is strictly increasing, the trial
/// limits are ordered and 0 < rel_se_target < 1.
void validate(const SweepPlan& plan);

struct SdrPoint {
  double snr_db = 0.0;
  double sigma = 0.0;
  std::size_t trials = 0;
  double distortion = 0.0;
  double std_err = 0.0;
  double sdr_db = 0.0;
  bool capped = false;
  /// Codec actually run at this point (design parameters resolved).
  std::string design;
  double power = 0.0;
};

struct SdrCurve {
  std::string label;
  CodecSpec codec;
  std::vector<SdrPoint> points;
};

/// Worker count: 0 means the OpenMP default.
struct ExecutionOptions {
  int workers = 0;
};

/// Squared-error moments of a run of trials.
struct ErrorMoments {
  double sum2 = 0.0;
  double carry2 = 0.0;
  double sum4 = 0.0;
  double carry4 = 0.0;
  std::size_t count = 0;

  void add(double e2);
  void merge(const ErrorMoments& other);
  double mean() const;
  /// Standard error of the mean of e^2.
  double std_err() const;
};

/// Trials [first, first + count) of one operating point. Trial t draws its
/// source value and noise from the stream keyed by (seed, point, t).
ErrorMoments run_trials(const Codec& codec, const NormalizationRecord& norm, const NoisePoint& point,
                        std::size_t first, std::size_t count);

/// Adaptive estimate with batches computed in parallel and merged in batch
/// order, so the result does not depend on the worker count.
SdrPoint estimate_point(const Codec& codec, const NormalizationRecord& norm,
                        const NoisePoint& point, const SweepPlan& plan,
                        const ExecutionOptions& exec = {});

/// Single-threaded reference for estimate_point; bit-identical results.
SdrPoint estimate_point_serial(const Codec& codec, const NormalizationRecord& norm,
                               const NoisePoint& point, const SweepPlan& plan);

/// Built codecs and their normalization records, keyed by spec string.
class CodecCache {
 public:
  struct Entry {
    std::shared_ptr<const Codec> codec;
    NormalizationRecord norm;
  };

  const Entry& get(const CodecSpec& spec);

 private:
  std::mutex mutex_;
  std::map<std::string, std::unique_ptr<Entry>> entries_;
};

/// Replaces auto design fields for noise level `sigma` (normalized units).
/// The level follows the noise in the codec's own units, which depends on the
/// chosen design through its power, so the choice is iterated to a fixed point.
CodecSpec resolve_design(const CodecSpec& spec, double sigma, CodecCache& cache);

/// The design rule at a given native noise level.
CodecSpec design_for_native_sigma(const CodecSpec& spec, double native_sigma);

SdrCurve sweep(const SweepPlan& plan, const std::string& label, CodecCache& cache,
               const ExecutionOptions& exec = {});

}  // namespace jscc
