#include "jscc/io/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "jscc/errors.hpp"
#include "json.hpp"

namespace jscc {

using nlohmann::json;

namespace {

// Recursive scan recording the line of every value by JSON pointer.
class LineIndexer {
 public:
  explicit LineIndexer(std::string_view text) : text_(text) {}

  std::map<std::string, int> run() {
    skip_ws();
    value("");
    return std::move(lines_);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        out += text_[pos_ + 1];
        pos_ += 2;
        continue;
      }
      out += text_[pos_++];
    }
    ++pos_;  // closing quote
    return out;
  }

  static std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') {
        out += "~0";
      } else if (c == '/') {
        out += "~1";
      } else {
        out += c;
      }
    }
    return out;
  }

  void value(const std::string& path) {
    lines_.emplace(path, line_);
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        const std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        skip_ws();
        value(path + "/" + escape_token(key));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      int idx = 0;
      while (pos_ < text_.size() && text_[pos_] != ']') {
        value(path + "/" + std::to_string(idx++));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) == std::string_view::npos) {
        ++pos_;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

class Reader {
 public:
  Reader(std::string_view source, std::map<std::string, int> lines)
      : source_(source), lines_(std::move(lines)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw ConfigError(where(path) + message);
  }

  std::string where(const std::string& path) const {
    std::string p = path;
    while (true) {
      auto it = lines_.find(p);
      if (it != lines_.end()) return std::string(source_) + ":" + std::to_string(it->second) + ": ";
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    return std::string(source_) + ": ";
  }

  void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : keys) known = known || it.key() == k;
      if (!known) fail(path + "/" + it.key(), "unknown key '" + it.key() + "'");
    }
  }

  double number(const json& v, const std::string& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }

  std::int64_t integer(const json& v, const std::string& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
  }

  std::size_t count(const json& v, const std::string& path) const {
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (d >= 1.0 && d <= 1e15 && d == std::floor(d)) return static_cast<std::size_t>(d);
    }
    fail(path, "expected a positive count");
  }

  std::string text(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  std::pair<double, double> range(const json& v, const std::string& path) const {
    if (!v.is_array() || v.size() != 2) fail(path, "expected [low, high]");
    const double lo = number(v[0], path + "/0");
    const double hi = number(v[1], path + "/1");
    if (!(lo < hi)) fail(path, "range must have low < high");
    return {lo, hi};
  }

  std::vector<double> grid(const json& v, const std::string& path) const {
    std::vector<double> out;
    if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "/" + std::to_string(i)));
    } else if (v.is_object()) {
      allow_keys(v, path, {"from", "to", "step"});
      if (!v.contains("from") || !v.contains("to") || !v.contains("step")) {
        fail(path, "grid needs from, to and step");
      }
      const double from = number(v["from"], path + "/from");
      const double to = number(v["to"], path + "/to");
      const double step = number(v["step"], path + "/step");
      if (!(step > 0.0) || to < from) fail(path, "grid needs step > 0 and to >= from");
      const auto n = static_cast<long long>(std::floor((to - from) / step + 1e-9));
      if (n > 100000) fail(path, "grid too long");
      for (long long i = 0; i <= n; ++i) out.push_back(from + static_cast<double>(i) * step);
    } else {
      fail(path, "expected a list of values or {from, to, step}");
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (!(out[i] > out[i - 1])) fail(path, "grid must be strictly increasing");
    }
    return out;
  }

  CodecSpec codec(const json& v, const std::string& path) const {
    std::string spec_text;
    if (v.is_string()) {
      spec_text = v.get<std::string>();
    } else if (v.is_object()) {
      allow_keys(v, path, {"scheme", "N", "a", "b", "alpha", "k", "P", "variant", "labeling"});
      if (!v.contains("scheme")) fail(path, "codec needs a scheme");
      spec_text = text(v["scheme"], path + "/scheme");
      char sep = ':';
      for (const char* key : {"N", "a", "b", "alpha", "k", "P", "variant", "labeling"}) {
        if (!v.contains(key)) continue;
        const json& item = v[key];
        std::string value;
        if (item.is_string()) {
          value = item.get<std::string>();
        } else if (item.is_array()) {
          for (std::size_t i = 0; i < item.size(); ++i) {
            value += (i ? "/" : "") + std::to_string(integer(item[i], path + "/" + key + "/" + std::to_string(i)));
          }
        } else if (item.is_number_integer()) {
          value = std::to_string(item.get<long long>());
        } else if (item.is_number()) {
          std::ostringstream os;
          os.precision(17);
          os << item.get<double>();
          value = os.str();
        } else {
          fail(path + "/" + key, "unsupported value");
        }
        spec_text += sep + std::string(key) + "=" + value;
        sep = ',';
      }
    } else {
      fail(path, "codec must be a spec string or an object");
    }
    try {
      return parse_codec_spec(spec_text);
    } catch (const CapacityError& e) {
      throw CapacityError(where(path) + e.what());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

 private:
  std::string_view source_;
  std::map<std::string, int> lines_;
};

struct PlanDefaults {
  std::vector<double> grid;
  std::size_t min_trials = 100000;
  std::size_t max_trials = 10000000;
  double rel_se = 0.1;
  std::optional<std::pair<double, double>> fit;
};

void read_plan_fields(const Reader& r, const json& obj, const std::string& path, PlanDefaults& d) {
  if (obj.contains("snr_db")) d.grid = r.grid(obj["snr_db"], path + "/snr_db");
  if (obj.contains("min_trials")) d.min_trials = r.count(obj["min_trials"], path + "/min_trials");
  if (obj.contains("max_trials")) d.max_trials = r.count(obj["max_trials"], path + "/max_trials");
  if (obj.contains("rel_se")) d.rel_se = r.number(obj["rel_se"], path + "/rel_se");
  if (obj.contains("fit")) d.fit = r.range(obj["fit"], path + "/fit");
}

BoundSpec read_bound(const Reader& r, const json& obj, const std::string& path) {
  BoundSpec b;
  try {
    b.kind = parse_bound_kind(r.text(obj.value("kind", json()), path + "/kind"));
  } catch (const ParameterError& e) {
    r.fail(path + "/kind", e.what());
  }
  if (obj.contains("n")) b.n = static_cast<int>(r.integer(obj["n"], path + "/n"));
  if (obj.contains("alpha")) b.alpha = r.number(obj["alpha"], path + "/alpha");
  if (obj.contains("m")) b.m = static_cast<int>(r.integer(obj["m"], path + "/m"));
  if (obj.contains("k")) b.k = static_cast<int>(r.integer(obj["k"], path + "/k"));
  if (obj.contains("c")) b.c = r.number(obj["c"], path + "/c");
  if (obj.contains("c2")) b.c2 = r.number(obj["c2"], path + "/c2");
  if (b.n < 1) r.fail(path + "/n", "N must be positive");
  if (b.kind == BoundKind::scheme1 && !(b.alpha > 2.0)) r.fail(path + "/alpha", "alpha must exceed 2");
  if (b.kind == BoundKind::hybrid && (b.m < 1 || b.m > b.n)) r.fail(path + "/m", "need 1 <= M <= N");
  return b;
}

}  // namespace

std::map<std::string, int> json_pointer_lines(std::string_view text) { return LineIndexer(text).run(); }

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Byte offset to line number.
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw ConfigError(std::string(source) + ":" + std::to_string(line) + ": JSON syntax error: " + e.what());
  }
  const Reader r(source, json_pointer_lines(text));
  r.allow_keys(root, "", {"schema", "name", "seed", "defaults", "curves", "overlays", "analyses", "plot"});
  if (!root.contains("schema")) r.fail("", "missing 'schema' field");
  if (r.integer(root["schema"], "/schema") != kConfigSchema) {
    r.fail("/schema", "unsupported schema version (expected " + std::to_string(kConfigSchema) + ")");
  }

  ExperimentConfig cfg;
  cfg.name = root.contains("name") ? r.text(root["name"], "/name") : std::string("experiment");
  if (root.contains("seed")) {
    const json& s = root["seed"];
    if (!s.is_number_unsigned()) r.fail("/seed", "seed must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }

  PlanDefaults defaults;
  if (root.contains("defaults")) {
    r.allow_keys(root["defaults"], "/defaults", {"snr_db", "min_trials", "max_trials", "rel_se", "fit"});
    read_plan_fields(r, root["defaults"], "/defaults", defaults);
  }

  std::set<std::string> labels;
  std::map<std::string, int> curve_n;
  if (root.contains("curves")) {
    const json& curves = root["curves"];
    if (!curves.is_array()) r.fail("/curves", "expected a list");
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const std::string path = "/curves/" + std::to_string(i);
      const json& c = curves[i];
      r.allow_keys(c, path, {"label", "codec", "snr_db", "min_trials", "max_trials", "rel_se", "fit"});
      if (!c.contains("label")) r.fail(path, "curve needs a label");
      if (!c.contains("codec")) r.fail(path, "curve needs a codec");
      CurveConfig cc;
      cc.label = r.text(c["label"], path + "/label");
      if (cc.label.empty()) r.fail(path + "/label", "label must not be empty");
      if (!labels.insert(cc.label).second) r.fail(path + "/label", "duplicate label '" + cc.label + "'");
      PlanDefaults d = defaults;
      read_plan_fields(r, c, path, d);
      cc.plan.codec = r.codec(c["codec"], path + "/codec");
      cc.plan.snr_grid_db = d.grid;
      cc.plan.min_trials = d.min_trials;
      cc.plan.max_trials = d.max_trials;
      cc.plan.rel_se_target = d.rel_se;
      cc.plan.master_seed = cfg.seed;
      cc.fit_window = d.fit;
      try {
        validate(cc.plan);
      } catch (const ParameterError& e) {
        r.fail(path, e.what());
      }
      curve_n[cc.label] = cc.plan.codec.n;
      cfg.curves.push_back(std::move(cc));
    }
  }

  if (root.contains("overlays")) {
    const json& overlays = root["overlays"];
    if (!overlays.is_array()) r.fail("/overlays", "expected a list");
    std::set<std::string> overlay_labels;
    for (std::size_t i = 0; i < overlays.size(); ++i) {
      const std::string path = "/overlays/" + std::to_string(i);
      const json& o = overlays[i];
      r.allow_keys(o, path, {"kind", "n", "alpha", "m", "k", "c", "c2", "label", "anchor", "snr_db"});
      OverlayConfig oc;
      oc.bound = read_bound(r, o, path);
      oc.label = o.contains("label") ? r.text(o["label"], path + "/label") : describe(oc.bound);
      if (!overlay_labels.insert(oc.label).second || labels.count(oc.label)) {
        r.fail(path + "/label", "duplicate label '" + oc.label + "'");
      }
      if (o.contains("anchor")) {
        oc.anchor = r.text(o["anchor"], path + "/anchor");
        auto it = curve_n.find(*oc.anchor);
        if (it == curve_n.end()) r.fail(path + "/anchor", "no curve labelled '" + *oc.anchor + "'");
        if (it->second != oc.bound.n) r.fail(path + "/n", "overlay N differs from its anchor curve's N");
        const auto& curve = *std::find_if(cfg.curves.begin(), cfg.curves.end(),
                                          [&](const CurveConfig& c) { return c.label == *oc.anchor; });
        if (!curve.fit_window) r.fail(path + "/anchor", "anchor curve has no fit window");
      }
      if (!cfg.curves.empty()) {
        bool matched = false;
        for (const auto& [label, n] : curve_n) matched = matched || n == oc.bound.n;
        if (!matched) r.fail(path + "/n", "overlay N matches no curve");
      }
      if (o.contains("snr_db")) {
        oc.snr_grid_db = r.grid(o["snr_db"], path + "/snr_db");
      } else if (oc.anchor) {
        for (const auto& c : cfg.curves) {
          if (c.label == *oc.anchor) oc.snr_grid_db = c.plan.snr_grid_db;
        }
      } else {
        oc.snr_grid_db = defaults.grid;
      }
      cfg.overlays.push_back(std::move(oc));
    }
  }

  if (root.contains("analyses")) {
    const json& analyses = root["analyses"];
    if (!analyses.is_array()) r.fail("/analyses", "expected a list");
    for (std::size_t i = 0; i < analyses.size(); ++i) {
      const std::string path = "/analyses/" + std::to_string(i);
      const json& a = analyses[i];
      r.allow_keys(a, path, {"type", "label", "codec", "samples", "eps_exponents", "deltas", "metric", "reference"});
      AnalysisConfig ac;
      const std::string type = r.text(a.value("type", json()), path + "/type");
      if (type == "dimension") {
        ac.type = AnalysisConfig::Type::dimension;
      } else if (type == "stretch") {
        ac.type = AnalysisConfig::Type::stretch;
      } else {
        r.fail(path + "/type", "type must be 'dimension' or 'stretch'");
      }
      if (!a.contains("label")) r.fail(path, "analysis needs a label");
      ac.label = r.text(a["label"], path + "/label");
      if (!labels.insert(ac.label).second) r.fail(path + "/label", "duplicate label '" + ac.label + "'");
      if (!a.contains("codec")) r.fail(path, "analysis needs a codec");
      ac.codec = r.codec(a["codec"], path + "/codec");
      if (has_auto_design(ac.codec)) r.fail(path + "/codec", "analyses need a fixed design");
      ac.seed = cfg.seed;
      if (a.contains("reference")) ac.reference = r.number(a["reference"], path + "/reference");
      if (ac.type == AnalysisConfig::Type::dimension) {
        ac.samples = a.contains("samples") ? r.count(a["samples"], path + "/samples") : 400000;
        std::pair<double, double> ex{3, 12};
        if (a.contains("eps_exponents")) ex = r.range(a["eps_exponents"], path + "/eps_exponents");
        if (ex.second - ex.first < 3) r.fail(path + "/eps_exponents", "need at least 4 box sizes");
        for (int e = static_cast<int>(ex.first); e <= static_cast<int>(ex.second); ++e) {
          ac.epsilons.push_back(std::ldexp(1.0, -e));
        }
      } else {
        ac.samples = a.contains("samples") ? r.count(a["samples"], path + "/samples") : 100000;
        if (ac.samples < 100000) r.fail(path + "/samples", "stretch needs at least 10^5 samples");
        if (a.contains("deltas")) {
          const json& d = a["deltas"];
          if (d.is_object()) {
            r.allow_keys(d, path + "/deltas", {"from", "ratio", "count"});
            const double from = r.number(d.value("from", json(1e-2)), path + "/deltas/from");
            const double ratio = r.number(d.value("ratio", json(0.5)), path + "/deltas/ratio");
            const auto n = r.integer(d.value("count", json(6)), path + "/deltas/count");
            if (!(ratio > 0.0 && ratio < 1.0) || n < 4 || !(from > 0.0 && from <= 1e-2)) {
              r.fail(path + "/deltas", "need 0 < from <= 0.01, 0 < ratio < 1, count >= 4");
            }
            for (std::int64_t j = 0; j < n; ++j) ac.deltas.push_back(from * std::pow(ratio, static_cast<double>(j)));
          } else {
            ac.deltas = r.grid(d, path + "/deltas");
            std::reverse(ac.deltas.begin(), ac.deltas.end());
          }
        } else {
          for (int j = 0; j < 6; ++j) ac.deltas.push_back(1e-2 * std::pow(0.5, j));
        }
        const std::string metric = a.contains("metric") ? r.text(a["metric"], path + "/metric") : "euclidean";
        if (metric == "euclidean") {
          ac.metric = StretchMetric::euclidean;
        } else if (metric == "torus") {
          ac.metric = StretchMetric::torus;
        } else {
          r.fail(path + "/metric", "metric must be 'euclidean' or 'torus'");
        }
      }
      cfg.analyses.push_back(std::move(ac));
    }
  }

  cfg.plot_file = cfg.name + ".svg";
  cfg.plot_options.title = cfg.name;
  if (root.contains("plot")) {
    const json& p = root["plot"];
    r.allow_keys(p, "/plot", {"enabled", "file", "title", "x_range", "y_range"});
    if (p.contains("enabled")) {
      if (!p["enabled"].is_boolean()) r.fail("/plot/enabled", "expected true or false");
      cfg.plot = p["enabled"].get<bool>();
    }
    if (p.contains("file")) cfg.plot_file = r.text(p["file"], "/plot/file");
    if (p.contains("title")) cfg.plot_options.title = r.text(p["title"], "/plot/title");
    if (p.contains("x_range")) cfg.plot_options.x_range = r.range(p["x_range"], "/plot/x_range");
    if (p.contains("y_range")) cfg.plot_options.y_range = r.range(p["y_range"], "/plot/y_range");
  }
  if (cfg.curves.empty() && cfg.overlays.empty()) cfg.plot = false;
  return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

void override_seed(ExperimentConfig& config, std::uint64_t seed) {
  config.seed = seed;
  for (auto& c : config.curves) c.plan.master_seed = seed;
  for (auto& a : config.analyses) a.seed = seed;
}

}  // namespace jscc
