#include "jscc/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "jscc/io/csv.hpp"

namespace jscc {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> pts;
  bool dashed = false;
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Tick spacing of 1, 2 or 5 times a power of ten giving about `target` ticks.
double tick_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string render_svg(const std::vector<SdrCurve>& curves, const std::vector<OverlayCurve>& overlays,
                       const PlotOptions& options) {
  std::vector<Series> series;
  for (const SdrCurve& c : curves) {
    Series s{c.label, {}, false};
    for (const SdrPoint& p : c.points) {
      if (std::isfinite(p.snr_db) && std::isfinite(p.sdr_db)) s.pts.emplace_back(p.snr_db, p.sdr_db);
    }
    series.push_back(std::move(s));
  }
  for (const OverlayCurve& o : overlays) {
    Series s{o.label, {}, true};
    for (std::size_t i = 0; i < o.snr_db.size(); ++i) {
      if (std::isfinite(o.snr_db[i]) && std::isfinite(o.sdr_db[i])) s.pts.emplace_back(o.snr_db[i], o.sdr_db[i]);
    }
    series.push_back(std::move(s));
  }

  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const Series& s : series) {
    for (auto [x, y] : s.pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0)) {
    x0 = 0.0;
    x1 = 1.0;
    y0 = 0.0;
    y1 = 1.0;
  }
  if (options.x_range) std::tie(x0, x1) = *options.x_range;
  if (options.y_range) std::tie(y0, y1) = *options.y_range;
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;

  const double left = 70;
  const double right = options.width - 190.0;
  const double top = 40;
  const double bottom = options.height - 55.0;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
  auto py = [&](double y) { return bottom - (y - y0) / (y1 - y0) * (bottom - top); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\""
     << options.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    os << "<text x=\"" << (left + right) / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
       << escape(options.title) << "</text>\n";
  }
  os << "<defs><clipPath id=\"plot\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\""
     << right - left << "\" height=\"" << bottom - top << "\"/></clipPath></defs>\n";

  // Grid and ticks.
  os << "<g class=\"axes\" stroke=\"#ccc\" stroke-width=\"0.5\">\n";
  const double xs = tick_step(x1 - x0, 8);
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9; t += xs) {
    os << "<line x1=\"" << px(t) << "\" y1=\"" << top << "\" x2=\"" << px(t) << "\" y2=\"" << bottom << "\"/>\n";
  }
  const double ys = tick_step(y1 - y0, 8);
  for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9; t += ys) {
    os << "<line x1=\"" << left << "\" y1=\"" << py(t) << "\" x2=\"" << right << "\" y2=\"" << py(t) << "\"/>\n";
  }
  os << "</g>\n<g class=\"ticks\">\n";
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9; t += xs) {
    os << "<text x=\"" << px(t) << "\" y=\"" << bottom + 16 << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9; t += ys) {
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
  }
  os << "</g>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\""
     << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text class=\"xlabel\" x=\"" << (left + right) / 2 << "\" y=\"" << options.height - 15
     << "\" text-anchor=\"middle\">" << escape(options.x_label) << "</text>\n";
  os << "<text class=\"ylabel\" x=\"18\" y=\"" << (top + bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << (top + bottom) / 2 << ")\">" << escape(options.y_label) << "</text>\n";

  // Curves.
  os << "<g clip-path=\"url(#plot)\" fill=\"none\" stroke-width=\"1.6\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    os << "<polyline class=\"" << (s.dashed ? "overlay" : "curve") << "\" stroke=\"" << kPalette[i % 8] << "\"";
    if (s.dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    for (std::size_t j = 0; j < s.pts.size(); ++j) {
      os << (j ? " " : "") << num(px(s.pts[j].first)) << ',' << num(py(s.pts[j].second));
    }
    os << "\"><title>" << escape(s.label) << "</title></polyline>\n";
  }
  os << "</g>\n";

  // Legend.
  os << "<g class=\"legend\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = top + 8 + 18.0 * static_cast<double>(i);
    os << "<line x1=\"" << right + 12 << "\" y1=\"" << y << "\" x2=\"" << right + 40 << "\" y2=\"" << y
       << "\" stroke=\"" << kPalette[i % 8] << "\" stroke-width=\"2\"";
    if (series[i].dashed) os << " stroke-dasharray=\"6 4\"";
    os << "/>\n<text x=\"" << right + 46 << "\" y=\"" << y + 4 << "\">" << escape(series[i].label) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace jscc
