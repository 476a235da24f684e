#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jscc/analysis/bounds.hpp"
#include "jscc/analysis/stretch.hpp"
#include "jscc/harness.hpp"
#include "jscc/io/svg.hpp"

namespace jscc {

inline constexpr int kConfigSchema = 1;

struct CurveConfig {
  std::string label;
  SweepPlan plan;
  std::optional<std::pair<double, double>> fit_window;
};

struct OverlayConfig {
  std::string label;
  BoundSpec bound;
  /// Curve whose fit window fixes the bound constant.
  std::optional<std::string> anchor;
  std::vector<double> snr_grid_db;
};

struct AnalysisConfig {
  enum class Type { dimension, stretch };
  Type type = Type::dimension;
  std::string label;
  CodecSpec codec;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::vector<double> epsilons;
  std::vector<double> deltas;
  StretchMetric metric = StretchMetric::euclidean;
  /// Expected value printed next to the estimate, if given.
  std::optional<double> reference;
};

struct ExperimentConfig {
  std::string name;
  std::uint64_t seed = 1;
  std::vector<CurveConfig> curves;
  std::vector<OverlayConfig> overlays;
  std::vector<AnalysisConfig> analyses;
  bool plot = true;
  std::string plot_file;
  PlotOptions plot_options;
};

/// Byte offset to 1-based line number, and JSON pointer to the line where
/// its value starts. The text must be valid JSON.
std::map<std::string, int> json_pointer_lines(std::string_view text);

/// Parses and validates a config. Errors carry "<source>:<line>: " prefixes;
/// ConfigError for schema problems, CapacityError for codecs past their caps.
ExperimentConfig parse_config(std::string_view text, std::string_view source = "config");
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Embedded configs: fig3, fig4, bounds-gallery, dimension-check.
std::vector<std::string> preset_names();
std::string_view preset_text(std::string_view name);

/// Applies a master seed to every sweep and analysis.
void override_seed(ExperimentConfig& config, std::uint64_t seed);

}  // namespace jscc
