#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "jscc/errors.hpp"
#include "jscc/io/config.hpp"
#include "jscc/io/csv.hpp"
#include "jscc/io/svg.hpp"

using namespace jscc;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

SdrCurve awkward_curve(const std::string& label) {
  SdrCurve c;
  c.label = label;
  const double values[] = {0.1, 1.0 / 3.0, std::nextafter(1.0, 2.0), 5e-324, 1.7976931348623157e308, 1e-300};
  std::size_t i = 0;
  for (double v : values) {
    SdrPoint p;
    p.snr_db = 5.0 * static_cast<double>(i) + v;
    p.sigma = v;
    p.trials = 100000 + 4096 * i;
    p.distortion = v / 7.0;
    p.std_err = v / 11.0;
    p.sdr_db = -10.0 * std::log10(v);
    p.capped = i % 2 == 1;
    c.points.push_back(p);
    ++i;
  }
  SdrPoint zero;
  zero.snr_db = 200;
  zero.sigma = 1e-10;
  zero.trials = 4096;
  zero.sdr_db = std::numeric_limits<double>::infinity();
  c.points.push_back(zero);
  return c;
}

std::string failure_of(const std::string& text) {
  try {
    parse_config(text, "cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("format_double round-trips bit-exactly") {
  for (double v : {0.0, -0.0, 0.1, 1.0 / 3.0, 5e-324, 2.5e-308, 1e308, 123456789.123456789}) {
    CHECK(same_bits(parse_double(format_double(v)), v));
  }
  CHECK(std::isinf(parse_double(format_double(std::numeric_limits<double>::infinity()))));
  CHECK_THROWS_AS(parse_double("1.5x"), IoError);
}

TEST_CASE("csv fields with separators are quoted and split back") {
  const std::string label = "a, \"b\"\nc";
  const auto fields = split_csv_line(csv_field(label) + ",2," + csv_field("plain"));
  REQUIRE(fields.size() == 3);
  CHECK(fields[0] == label);
  CHECK(fields[1] == "2");
  CHECK(fields[2] == "plain");
}

TEST_CASE("curve csv round-trip recovers every point bit-exactly") {
  const SdrCurve a = awkward_curve("scheme1, \"alpha\"=4");
  const SdrCurve b = awkward_curve("second");
  std::stringstream ss;
  write_curve_csv(ss, a);
  {
    std::stringstream tail;
    write_curve_csv(tail, b);
    std::string line;
    std::getline(tail, line);  // drop the header
    ss << tail.rdbuf();
  }
  const std::string first_line = ss.str().substr(0, ss.str().find('\n'));
  CHECK(first_line == kCurveCsvHeader);
  const auto back = read_curve_csv(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0].label == a.label);
  CHECK(back[1].label == b.label);
  REQUIRE(back[0].points.size() == a.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto& p = a.points[i];
    const auto& q = back[0].points[i];
    CHECK(same_bits(p.snr_db, q.snr_db));
    CHECK(same_bits(p.sigma, q.sigma));
    CHECK(p.trials == q.trials);
    CHECK(same_bits(p.distortion, q.distortion));
    CHECK(same_bits(p.std_err, q.std_err));
    CHECK(same_bits(p.sdr_db, q.sdr_db));
    CHECK(p.capped == q.capped);
  }
}

TEST_CASE("empty curve writes the header only") {
  SdrCurve c;
  c.label = "empty";
  std::ostringstream os;
  write_curve_csv(os, c);
  CHECK(os.str() == std::string(kCurveCsvHeader) + "\n");
  std::istringstream is(os.str());
  CHECK(read_curve_csv(is).empty());
}

TEST_CASE("malformed curve csv is rejected") {
  std::istringstream wrong_header("label,snr\nx,1\n");
  CHECK_THROWS_AS(read_curve_csv(wrong_header), IoError);
  std::istringstream short_row(std::string(kCurveCsvHeader) + "\nx,1,2\n");
  CHECK_THROWS_AS(read_curve_csv(short_row), IoError);
  std::istringstream bad_number(std::string(kCurveCsvHeader) + "\nx,1,2,3,abc,5,6,0\n");
  CHECK_THROWS_AS(read_curve_csv(bad_number), IoError);
}

TEST_CASE("overlay csv round-trip") {
  OverlayCurve o;
  o.label = "opta_slb N=4";
  for (int i = 1; i <= 5; ++i) {
    o.snr_db.push_back(10.0 * i);
    o.sigma.push_back(std::pow(10.0, -i / 2.0));
    o.distortion.push_back(std::pow(10.0, -3.0 * i) / 3.0);
    o.sdr_db.push_back(30.0 * i + 0.1);
  }
  std::stringstream ss;
  write_overlay_csv(ss, {o, o});
  const auto back = read_overlay_csv(ss);
  REQUIRE(back.size() == 1);  // grouped by label
  REQUIRE(back[0].snr_db.size() == 10);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(same_bits(back[0].distortion[i], o.distortion[i]));
    CHECK(same_bits(back[0].sdr_db[i + 5], o.sdr_db[i]));
  }
}

TEST_CASE("svg has one solid polyline per curve and a dashed one per overlay") {
  std::vector<SdrCurve> curves;
  for (const char* label : {"a", "b", "c", "d"}) curves.push_back(awkward_curve(label));
  OverlayCurve o;
  o.label = "bound";
  o.snr_db = {10, 20, 30};
  o.sigma = {0.3, 0.1, 0.03};
  o.distortion = {1e-3, 1e-5, 1e-7};
  o.sdr_db = {20, 40, 60};
  PlotOptions opt;
  opt.title = "t <&> t";
  const std::string svg = render_svg(curves, {o, o}, opt);
  CHECK(count_of(svg, "<polyline class=\"curve\"") == 4);
  CHECK(count_of(svg, "<polyline class=\"overlay\"") == 2);
  CHECK(count_of(svg, "stroke-dasharray") >= 2);
  CHECK(svg.find("SNR (dB)") != std::string::npos);
  CHECK(svg.find("SDR (dB)") != std::string::npos);
  CHECK(svg.find("t &lt;&amp;&gt; t") != std::string::npos);
  CHECK(svg.find("inf") == std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("json pointer lines") {
  const std::string text = "{\n  \"a\": 1,\n  \"b\": [\n    {\"c\": 2},\n    3\n  ],\n  \"d/e\": \"x\"\n}\n";
  const auto lines = json_pointer_lines(text);
  CHECK(lines.at("") == 1);
  CHECK(lines.at("/a") == 2);
  CHECK(lines.at("/b") == 3);
  CHECK(lines.at("/b/0") == 4);
  CHECK(lines.at("/b/0/c") == 4);
  CHECK(lines.at("/b/1") == 5);
  CHECK(lines.at("/d~1e") == 7);
}

TEST_CASE("config parses curves, grids and overlays") {
  const auto cfg = parse_config(R"({
    "schema": 1, "name": "t", "seed": 7,
    "defaults": {"snr_db": {"from": 0, "to": 30, "step": 7.5}, "min_trials": 8192, "fit": [10, 30]},
    "curves": [
      {"label": "s1", "codec": "scheme1:N=2,alpha=4"},
      {"label": "sm", "codec": {"scheme": "shift_map", "N": 3, "b": [3, 5]}, "snr_db": [1, 2, 3, 4]}
    ],
    "overlays": [{"kind": "scheme1", "n": 2, "alpha": 4, "anchor": "s1"}]
  })");
  REQUIRE(cfg.curves.size() == 2);
  CHECK(cfg.curves[0].plan.snr_grid_db == std::vector<double>{0, 7.5, 15, 22.5, 30});
  CHECK(cfg.curves[0].plan.min_trials == 8192);
  CHECK(cfg.curves[0].plan.master_seed == 7);
  CHECK(cfg.curves[1].plan.codec.stages == std::vector<int>{3, 5});
  CHECK(cfg.curves[1].plan.snr_grid_db.size() == 4);
  REQUIRE(cfg.overlays.size() == 1);
  CHECK(cfg.overlays[0].snr_grid_db == cfg.curves[0].plan.snr_grid_db);
  CHECK(cfg.plot_file == "t.svg");
}

TEST_CASE("config errors name the offending line") {
  const std::string dup = "{\n\"schema\": 1,\n\"curves\": [\n"
                          "{\"label\": \"x\", \"codec\": \"repetition:N=2\", \"snr_db\": [1]},\n"
                          "{\"label\": \"x\", \"codec\": \"repetition:N=2\", \"snr_db\": [1]}\n]}\n";
  const std::string msg = failure_of(dup);
  CHECK(msg.find("cfg:5:") == 0);
  CHECK(msg.find("duplicate label") != std::string::npos);

  CHECK(failure_of("{\n\"schema\": 1,\n\"curvs\": []\n}").find("cfg:3:") == 0);
  CHECK(failure_of("{\n\"schema\": 2\n}").find("cfg:2:") == 0);
  CHECK(failure_of("{\n\"schema\": 1,\n\"seed\": 1,,\n}").find("cfg:3:") == 0);
  CHECK(failure_of("{\"name\": \"x\"}").find("schema") != std::string::npos);
  CHECK(failure_of("{\"schema\": 1, \"curves\": [{\"label\": \"x\", \"codec\": \"scheme9:N=2\"}]}")
            .find("unknown scheme") != std::string::npos);
  CHECK(failure_of("{\"schema\": 1, \"curves\": [{\"label\": \"x\", \"codec\": \"repetition:N=2\", "
                   "\"snr_db\": [3, 2]}]}")
            .find("increasing") != std::string::npos);
}

TEST_CASE("overlay N must match some codec") {
  const std::string text = R"({"schema": 1,
    "curves": [{"label": "x", "codec": "repetition:N=2", "snr_db": [10]}],
    "overlays": [{"kind": "opta_slb", "n": 3}]})";
  CHECK(failure_of(text).find("matches no curve") != std::string::npos);
}

TEST_CASE("capacity problems surface as CapacityError with a line") {
  const std::string text = "{\"schema\": 1,\n\"curves\": [{\"label\": \"x\",\n"
                           "\"codec\": \"shift_map:N=3,a=1025\", \"snr_db\": [10]}]}";
  try {
    parse_config(text, "cfg");
    FAIL("expected CapacityError");
  } catch (const CapacityError& e) {
    CHECK(std::string(e.what()).find("cfg:3:") == 0);
  }
}

TEST_CASE("every preset parses") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_config(preset_text(name), name));
  }
  const auto fig3 = parse_config(preset_text("fig3"));
  REQUIRE(fig3.curves.size() == 4);
  for (const auto& c : fig3.curves) {
    CHECK(c.plan.codec.n == 4);
    CHECK(c.plan.snr_grid_db.front() == 0.0);
    CHECK(c.plan.snr_grid_db.back() == 80.0);
  }
  const auto fig4 = parse_config(preset_text("fig4"));
  REQUIRE(fig4.curves.size() == 2);
  CHECK(fig4.curves[0].plan.codec.grouping != fig4.curves[1].plan.codec.grouping);
  CHECK_THROWS_AS(preset_text("fig5"), ConfigError);
}
