#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "jscc/harness.hpp"

namespace jscc {

inline constexpr std::string_view kCurveCsvHeader =
    "label,snr_db,sigma,trials,distortion,std_err,sdr_db,capped";
inline constexpr std::string_view kOverlayCsvHeader = "label,snr_db,sigma,distortion,sdr_db";

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

/// Quotes a field when it holds a comma, quote or line break.
std::string csv_field(std::string_view text);
/// Splits one CSV record, undoing the quoting of csv_field.
std::vector<std::string> split_csv_line(std::string_view line);

void write_curve_csv(std::ostream& os, const SdrCurve& curve);
/// Curves in file order, grouped by label.
std::vector<SdrCurve> read_curve_csv(std::istream& is);

/// A sampled theoretical curve, stored the same way measured curves are.
struct OverlayCurve {
  std::string label;
  std::vector<double> snr_db;
  std::vector<double> sigma;
  std::vector<double> distortion;
  std::vector<double> sdr_db;
};

void write_overlay_csv(std::ostream& os, const std::vector<OverlayCurve>& overlays);
std::vector<OverlayCurve> read_overlay_csv(std::istream& is);

}  // namespace jscc
