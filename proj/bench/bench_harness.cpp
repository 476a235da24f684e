#include <benchmark/benchmark.h>

#include <cmath>

#include "jscc/channel.hpp"
#include "jscc/harness.hpp"

using namespace jscc;

namespace {

struct Fixture {
  SweepPlan plan;
  CodecCache cache;
  NoisePoint point;

  explicit Fixture(const char* codec, double snr_db) {
    plan.codec = parse_codec_spec(codec);
    plan.snr_grid_db = {snr_db};
    // A fixed trial budget: the target is unreachable, so every run stops at max_trials.
    plan.min_trials = 1 << 18;
    plan.max_trials = 1 << 18;
    plan.rel_se_target = 1e-9;
    point = make_noise_point(snr_db, plan.master_seed, 0);
    point.gain = std::sqrt(cache.get(plan.codec).norm.power);
  }
};

const char* kCodecs[] = {"repetition:N=4", "scheme1:N=4,alpha=4", "shift_map:N=4,a=3", "scheme2:N=4,P=62",
                         "type2:N=2,k=4"};

void BM_serial(benchmark::State& state) {
  Fixture f(kCodecs[state.range(0)], 40.0);
  const auto& entry = f.cache.get(f.plan.codec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_point_serial(*entry.codec, entry.norm, f.point, f.plan));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.plan.max_trials));
  state.SetLabel(kCodecs[state.range(0)]);
}

void BM_parallel(benchmark::State& state) {
  Fixture f(kCodecs[state.range(0)], 40.0);
  const auto& entry = f.cache.get(f.plan.codec);
  ExecutionOptions exec;
  exec.workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_point(*entry.codec, entry.norm, f.point, f.plan, exec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.plan.max_trials));
  state.SetLabel(kCodecs[state.range(0)]);
}

}  // namespace

BENCHMARK(BM_serial)->DenseRange(0, 4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_parallel)
    ->ArgsProduct({benchmark::CreateDenseRange(0, 4, 1), {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
