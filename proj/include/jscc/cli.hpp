#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "jscc/harness.hpp"
#include "jscc/io/config.hpp"
#include "jscc/io/csv.hpp"

namespace jscc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitIo = 4;

/// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "JSCC_WORKERS";

struct RunArtifacts {
  std::vector<SdrCurve> curves;
  std::vector<OverlayCurve> overlays;
  std::vector<std::filesystem::path> files;
};

/// Lowercase file stem for a label: runs of other characters become '-'.
std::string label_slug(const std::string& label);

/// Samples every overlay on its grid. Anchored overlays take the geometric
/// mean constant over the anchor curve's fit window.
std::vector<OverlayCurve> evaluate_overlays(const ExperimentConfig& config,
                                            const std::vector<SdrCurve>& curves);

/// Runs all sweeps and analyses, writing one CSV per curve, overlays.csv,
/// the SVG and summary.json into `out_dir`. Progress goes to `log`.
RunArtifacts run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                            const ExecutionOptions& exec, std::ostream& log);

/// Command-line entry point; args exclude the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jscc
