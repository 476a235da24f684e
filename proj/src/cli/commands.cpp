#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "jscc/analysis/bounds.hpp"
#include "jscc/analysis/boxcount.hpp"
#include "jscc/analysis/stretch.hpp"
#include "jscc/channel.hpp"
#include "jscc/cli.hpp"
#include "jscc/errors.hpp"
#include "jscc/io/svg.hpp"

namespace jscc {

namespace {

std::ofstream open_output(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path + "'");
  return os;
}

void finish_output(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write failed for '" + path + "'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read '" + path + "'");
  return is;
}

int default_workers() {
  const char* env = std::getenv(kWorkersEnv);
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0 || v > 4096) throw ConfigError(std::string(kWorkersEnv) + " must be a worker count");
  return static_cast<int>(v);
}

struct SimulateArgs {
  std::string config;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::optional<int> workers;
};

struct BoundsArgs {
  std::string kind;
  int n = 2;
  double alpha = 4.0;
  int m = 1;
  int k = 1;
  double c = 1.0;
  double c2 = 1.0;
  double snr_from = 5.0;
  double snr_to = 100.0;
  double snr_step = 5.0;
  std::string out;
};

struct DimensionArgs {
  std::string codec;
  std::size_t samples = 400000;
  int eps_from = 3;
  int eps_to = 12;
  std::uint64_t seed = 1;
  std::string out;
};

struct StretchArgs {
  std::string codec;
  std::size_t samples = 100000;
  double delta_from = 1e-2;
  double ratio = 0.5;
  int count = 6;
  std::string metric = "euclidean";
  std::uint64_t seed = 1;
  std::string out;
};

struct PlotArgs {
  std::vector<std::string> curves;
  std::string overlays;
  std::string title;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  ExperimentConfig config = a.preset.empty() ? load_config_file(a.config)
                                             : parse_config(preset_text(a.preset), a.preset);
  if (a.seed) override_seed(config, *a.seed);
  ExecutionOptions exec;
  exec.workers = a.workers ? *a.workers : default_workers();
  const RunArtifacts art = run_experiment(config, a.out, exec, out);
  for (const auto& f : art.files) out << "wrote " << f.string() << "\n";
  return kExitOk;
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  BoundSpec b;
  b.kind = parse_bound_kind(a.kind);
  b.n = a.n;
  b.alpha = a.alpha;
  b.m = a.m;
  b.k = a.k;
  b.c = a.c;
  b.c2 = a.c2;
  if (!(a.snr_step > 0.0) || a.snr_to < a.snr_from) throw ConfigError("need snr-step > 0 and snr-to >= snr-from");
  OverlayCurve curve;
  curve.label = describe(b);
  const auto n = static_cast<long long>(std::floor((a.snr_to - a.snr_from) / a.snr_step + 1e-9));
  for (long long i = 0; i <= n; ++i) {
    const double snr = a.snr_from + static_cast<double>(i) * a.snr_step;
    const double sigma = sigma_from_snr_db(snr);
    if (sigma > std::sqrt(0.5)) continue;
    const double d = bound_eval(b, sigma);
    curve.snr_db.push_back(snr);
    curve.sigma.push_back(sigma);
    curve.distortion.push_back(d);
    curve.sdr_db.push_back(sdr_db(d));
  }
  auto os = open_output(a.out);
  write_overlay_csv(os, {curve});
  finish_output(os, a.out);
  out << curve.label << ": " << curve.snr_db.size() << " points -> " << a.out << "\n";
  return kExitOk;
}

int cmd_dimension(const DimensionArgs& a, std::ostream& out) {
  const CodecSpec spec = parse_codec_spec(a.codec);
  if (has_auto_design(spec)) throw ConfigError("dimension needs a fixed design");
  if (a.eps_to - a.eps_from < 3) throw ConfigError("need at least 4 box sizes");
  const auto codec = make_codec(spec);
  const auto eps = dyadic_epsilons(a.eps_from, a.eps_to);
  const DimensionEstimate est =
      boxcount_dimension(constellation_sampler(*codec), codec->channel_dimension(), eps, a.samples, a.seed);
  auto os = open_output(a.out);
  os << "epsilon,boxes\n";
  for (std::size_t i = 0; i < est.epsilons.size(); ++i) {
    os << format_double(est.epsilons[i]) << "," << est.counts[i] << "\n";
  }
  finish_output(os, a.out);
  out << to_string(spec) << ": dimension " << std::fixed << std::setprecision(4) << est.dimension
      << (est.saturated ? "" : " (not saturated)") << "\n";
  return kExitOk;
}

int cmd_stretch(const StretchArgs& a, std::ostream& out) {
  const CodecSpec spec = parse_codec_spec(a.codec);
  if (has_auto_design(spec)) throw ConfigError("stretch needs a fixed design");
  StretchMetric metric = StretchMetric::euclidean;
  if (a.metric == "torus") {
    metric = StretchMetric::torus;
  } else if (a.metric != "euclidean") {
    throw ConfigError("metric must be 'euclidean' or 'torus'");
  }
  std::vector<double> deltas;
  for (int i = 0; i < a.count; ++i) deltas.push_back(a.delta_from * std::pow(a.ratio, i));
  const auto codec = make_codec(spec);
  const StretchProfile prof = stretch_profile(*codec, deltas, a.samples, a.seed, metric);
  auto os = open_output(a.out);
  os << "delta,stretch\n";
  for (std::size_t i = 0; i < prof.deltas.size(); ++i) {
    os << format_double(prof.deltas[i]) << "," << format_double(prof.values[i]) << "\n";
  }
  finish_output(os, a.out);
  out << to_string(spec) << ": stretch exponent " << std::fixed << std::setprecision(4) << prof.gamma << "\n";
  return kExitOk;
}

int cmd_plot(const PlotArgs& a, std::ostream& out) {
  std::vector<SdrCurve> curves;
  for (const auto& path : a.curves) {
    auto is = open_input(path);
    for (auto& c : read_curve_csv(is)) curves.push_back(std::move(c));
  }
  std::vector<OverlayCurve> overlays;
  if (!a.overlays.empty()) {
    auto is = open_input(a.overlays);
    overlays = read_overlay_csv(is);
  }
  PlotOptions options;
  options.title = a.title;
  auto os = open_output(a.out);
  os << render_svg(curves, overlays, options);
  finish_output(os, a.out);
  out << "wrote " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint source-channel codes over the AWGN channel"};
  app.name("jscc");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run an experiment config or preset");
  auto* cfg_opt = simulate->add_option("--config", sim.config, "JSON config file");
  auto* preset_opt = simulate->add_option("--preset", sim.preset, "Embedded config name");
  cfg_opt->excludes(preset_opt);
  simulate->add_option("--seed", sim.seed, "Master seed override");
  simulate->add_option("--out", sim.out, "Output directory")->capture_default_str();
  simulate->add_option("--workers", sim.workers, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  BoundsArgs bnd;
  auto* bounds = app.add_subcommand("bounds", "Sample a theoretical distortion curve");
  bounds->add_option("--kind", bnd.kind, "Bound kind")->required();
  bounds->add_option("--n", bnd.n, "Channel dimension N")->capture_default_str();
  bounds->add_option("--alpha", bnd.alpha, "scheme1 base")->capture_default_str();
  bounds->add_option("--m", bnd.m, "hybrid digital dimensions")->capture_default_str();
  bounds->add_option("--k", bnd.k, "type1/type2 design level")->capture_default_str();
  bounds->add_option("--c", bnd.c, "Leading constant")->capture_default_str();
  bounds->add_option("--c2", bnd.c2, "Exponent constant")->capture_default_str();
  bounds->add_option("--snr-from", bnd.snr_from, "First SNR (dB)")->capture_default_str();
  bounds->add_option("--snr-to", bnd.snr_to, "Last SNR (dB)")->capture_default_str();
  bounds->add_option("--snr-step", bnd.snr_step, "SNR step (dB)")->capture_default_str();
  bounds->add_option("--out", bnd.out, "Output CSV")->required();

  DimensionArgs dim;
  auto* dimension = app.add_subcommand("dimension", "Box-counting dimension of a constellation");
  dimension->add_option("--codec", dim.codec, "Codec spec, e.g. scheme1:N=2,alpha=4")->required();
  dimension->add_option("--samples", dim.samples, "Points per pass")->capture_default_str();
  dimension->add_option("--eps-from", dim.eps_from, "Largest box 2^-e")->capture_default_str();
  dimension->add_option("--eps-to", dim.eps_to, "Smallest box 2^-e")->capture_default_str();
  dimension->add_option("--seed", dim.seed, "Seed")->capture_default_str();
  dimension->add_option("--out", dim.out, "Output CSV")->required();

  StretchArgs str;
  auto* stretch = app.add_subcommand("stretch", "Stretch profile of an encoder");
  stretch->add_option("--codec", str.codec, "Codec spec")->required();
  stretch->add_option("--samples", str.samples, "Samples per delta")->capture_default_str();
  stretch->add_option("--delta-from", str.delta_from, "Largest delta")->capture_default_str();
  stretch->add_option("--ratio", str.ratio, "Delta ratio")->capture_default_str();
  stretch->add_option("--count", str.count, "Number of deltas")->capture_default_str();
  stretch->add_option("--metric", str.metric, "euclidean or torus")->capture_default_str();
  stretch->add_option("--seed", str.seed, "Seed")->capture_default_str();
  stretch->add_option("--out", str.out, "Output CSV")->required();

  PlotArgs plt;
  auto* plot = app.add_subcommand("plot", "Render an SVG from curve and overlay CSVs");
  plot->add_option("--curves", plt.curves, "Curve CSV files")->required();
  plot->add_option("--overlays", plt.overlays, "Overlay CSV file");
  plot->add_option("--title", plt.title, "Plot title");
  plot->add_option("--out", plt.out, "Output SVG")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (simulate->parsed()) {
      if (sim.config.empty() && sim.preset.empty()) throw ConfigError("simulate needs --config or --preset");
      return cmd_simulate(sim, out);
    }
    if (bounds->parsed()) return cmd_bounds(bnd, out);
    if (dimension->parsed()) return cmd_dimension(dim, out);
    if (stretch->parsed()) return cmd_stretch(str, out);
    if (plot->parsed()) return cmd_plot(plt, out);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace jscc
