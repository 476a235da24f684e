#include "jscc/io/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "jscc/errors.hpp"

namespace jscc {

namespace {

std::size_t parse_size(std::string_view text) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw IoError("csv: bad integer '" + std::string(text) + "'");
  }
  return v;
}

bool parse_flag(std::string_view text) {
  if (text == "1") return true;
  if (text == "0") return false;
  throw IoError("csv: bad flag '" + std::string(text) + "'");
}

void expect_header(std::istream& is, std::string_view header) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw IoError("csv: unexpected header '" + line + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) {
    throw IoError("csv: bad number '" + std::string(text) + "'");
  }
  return v;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw IoError("csv: unterminated quote");
  return fields;
}

void write_curve_csv(std::ostream& os, const SdrCurve& curve) {
  os << kCurveCsvHeader << '\n';
  const std::string label = csv_field(curve.label);
  for (const SdrPoint& p : curve.points) {
    os << label << ',' << format_double(p.snr_db) << ',' << format_double(p.sigma) << ','
       << p.trials << ',' << format_double(p.distortion) << ',' << format_double(p.std_err) << ','
       << format_double(p.sdr_db) << ',' << (p.capped ? 1 : 0) << '\n';
  }
}

std::vector<SdrCurve> read_curve_csv(std::istream& is) {
  expect_header(is, kCurveCsvHeader);
  std::vector<SdrCurve> curves;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 8) throw IoError("csv: expected 8 fields, got " + std::to_string(f.size()));
    SdrPoint p;
    p.snr_db = parse_double(f[1]);
    p.sigma = parse_double(f[2]);
    p.trials = parse_size(f[3]);
    p.distortion = parse_double(f[4]);
    p.std_err = parse_double(f[5]);
    p.sdr_db = parse_double(f[6]);
    p.capped = parse_flag(f[7]);
    if (curves.empty() || curves.back().label != f[0]) {
      curves.emplace_back();
      curves.back().label = f[0];
    }
    curves.back().points.push_back(p);
  }
  return curves;
}

void write_overlay_csv(std::ostream& os, const std::vector<OverlayCurve>& overlays) {
  os << kOverlayCsvHeader << '\n';
  for (const OverlayCurve& c : overlays) {
    const std::string label = csv_field(c.label);
    for (std::size_t i = 0; i < c.snr_db.size(); ++i) {
      os << label << ',' << format_double(c.snr_db[i]) << ',' << format_double(c.sigma[i]) << ','
         << format_double(c.distortion[i]) << ',' << format_double(c.sdr_db[i]) << '\n';
    }
  }
}

std::vector<OverlayCurve> read_overlay_csv(std::istream& is) {
  expect_header(is, kOverlayCsvHeader);
  std::vector<OverlayCurve> out;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 5) throw IoError("csv: expected 5 fields, got " + std::to_string(f.size()));
    if (out.empty() || out.back().label != f[0]) {
      out.emplace_back();
      out.back().label = f[0];
    }
    out.back().snr_db.push_back(parse_double(f[1]));
    out.back().sigma.push_back(parse_double(f[2]));
    out.back().distortion.push_back(parse_double(f[3]));
    out.back().sdr_db.push_back(parse_double(f[4]));
  }
  return out;
}

}  // namespace jscc
