#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jscc/harness.hpp"
#include "jscc/io/csv.hpp"

namespace jscc {

struct PlotOptions {
  std::string title;
  std::string x_label = "SNR (dB)";
  std::string y_label = "SDR (dB)";
  std::optional<std::pair<double, double>> x_range;
  std::optional<std::pair<double, double>> y_range;
  int width = 720;
  int height = 480;
};

/// One solid polyline per measured curve, one dashed polyline per overlay,
/// dB axes with ticks and a legend. Non-finite points are skipped.
std::string render_svg(const std::vector<SdrCurve>& curves, const std::vector<OverlayCurve>& overlays,
                       const PlotOptions& options);

}  // namespace jscc
