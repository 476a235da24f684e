#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "jscc/analysis/bounds.hpp"
#include "jscc/analysis/boxcount.hpp"
#include "jscc/analysis/slope.hpp"
#include "jscc/analysis/stretch.hpp"
#include "jscc/channel.hpp"
#include "jscc/cli.hpp"
#include "jscc/errors.hpp"
#include "jscc/io/svg.hpp"
#include "json.hpp"

namespace jscc {

namespace {

using nlohmann::ordered_json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write '" + path.string() + "'");
  os << content;
  os.flush();
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}

bool in_bound_domain(double sigma) { return sigma > 0.0 && sigma <= std::sqrt(0.5); }

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

std::string label_slug(const std::string& label) {
  std::string out;
  bool dash = false;
  for (unsigned char c : label) {
    if (std::isalnum(c)) {
      if (dash && !out.empty()) out += '-';
      out += static_cast<char>(std::tolower(c));
      dash = false;
    } else if (c == '.') {
      if (dash && !out.empty()) out += '-';
      out += 'p';
      dash = false;
    } else {
      dash = true;
    }
  }
  return out.empty() ? std::string("curve") : out;
}

std::vector<OverlayCurve> evaluate_overlays(const ExperimentConfig& config,
                                            const std::vector<SdrCurve>& curves) {
  std::vector<OverlayCurve> out;
  for (const auto& oc : config.overlays) {
    BoundSpec bound = oc.bound;
    if (oc.anchor) {
      const auto cfg = std::find_if(config.curves.begin(), config.curves.end(),
                                    [&](const CurveConfig& c) { return c.label == *oc.anchor; });
      const auto measured = std::find_if(curves.begin(), curves.end(),
                                         [&](const SdrCurve& c) { return c.label == *oc.anchor; });
      if (cfg != config.curves.end() && measured != curves.end() && cfg->fit_window) {
        double log_sum = 0.0;
        int used = 0;
        for (const auto& p : measured->points) {
          if (p.snr_db < cfg->fit_window->first || p.snr_db > cfg->fit_window->second) continue;
          if (!(p.distortion > 0.0) || !in_bound_domain(p.sigma)) continue;
          log_sum += std::log(anchor_bound(bound, p.sigma, p.distortion).c);
          ++used;
        }
        if (used > 0) bound.c = std::exp(log_sum / used);
      }
    }
    OverlayCurve curve;
    curve.label = oc.label;
    for (double snr : oc.snr_grid_db) {
      const double sigma = sigma_from_snr_db(snr);
      if (!in_bound_domain(sigma)) continue;
      const double d = bound_eval(bound, sigma);
      if (!(d > 0.0) || !std::isfinite(d)) continue;
      curve.snr_db.push_back(snr);
      curve.sigma.push_back(sigma);
      curve.distortion.push_back(d);
      curve.sdr_db.push_back(sdr_db(d));
    }
    out.push_back(std::move(curve));
  }
  return out;
}

RunArtifacts run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                            const ExecutionOptions& exec, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("cannot create output directory '" + out_dir.string() + "'");
  }

  RunArtifacts art;
  std::set<std::string> stems;
  auto unique_stem = [&](const std::string& label) {
    std::string stem = label_slug(label);
    for (int i = 2; stems.count(stem); ++i) stem = label_slug(label) + "-" + std::to_string(i);
    stems.insert(stem);
    return stem;
  };
  stems.insert("overlays");
  stems.insert("summary");

  ordered_json summary;
  summary["name"] = config.name;
  summary["seed"] = config.seed;
  summary["curves"] = ordered_json::array();

  CodecCache cache;
  for (const auto& cc : config.curves) {
    log << "sweep '" << cc.label << "' (" << to_string(cc.plan.codec) << ", "
        << cc.plan.snr_grid_db.size() << " points)\n";
    SdrCurve curve = sweep(cc.plan, cc.label, cache, exec);
    const auto path = out_dir / (unique_stem(cc.label) + ".csv");
    std::ostringstream csv;
    write_curve_csv(csv, curve);
    write_file(path, csv.str());
    art.files.push_back(path);

    ordered_json entry;
    entry["label"] = cc.label;
    entry["codec"] = to_string(cc.plan.codec);
    entry["file"] = path.filename().string();
    std::size_t capped = 0;
    ordered_json designs = ordered_json::array();
    for (const auto& p : curve.points) {
      capped += p.capped ? 1 : 0;
      designs.push_back(p.design);
    }
    entry["capped_points"] = capped;
    if (has_auto_design(cc.plan.codec)) entry["designs"] = designs;

    std::ostringstream line;
    line << cc.label << ": ";
    if (cc.fit_window) {
      std::vector<double> x, y;
      for (const auto& p : curve.points) {
        x.push_back(p.snr_db);
        y.push_back(p.sdr_db);
      }
      entry["fit_window_db"] = {cc.fit_window->first, cc.fit_window->second};
      try {
        const SlopeFit fit = slope_fit(x, y, cc.fit_window->first, cc.fit_window->second);
        entry["slope"] = fit.slope;
        entry["intercept_db"] = fit.intercept;
        entry["fit_points"] = fit.points;
        line << "slope " << fixed(fit.slope, 3) << " over [" << cc.fit_window->first << ", "
             << cc.fit_window->second << "] dB (" << fit.points << " points";
      } catch (const Error& e) {
        entry["slope"] = nullptr;
        line << "no slope (" << e.what();
      }
      line << ", " << capped << " capped)";
    } else {
      line << curve.points.size() << " points, " << capped << " capped";
    }
    log << line.str() << "\n";
    summary["curves"].push_back(entry);
    art.curves.push_back(std::move(curve));
  }

  art.overlays = evaluate_overlays(config, art.curves);
  if (!config.overlays.empty()) {
    const auto path = out_dir / "overlays.csv";
    std::ostringstream csv;
    write_overlay_csv(csv, art.overlays);
    write_file(path, csv.str());
    art.files.push_back(path);
    summary["overlays"] = ordered_json::array();
    for (std::size_t i = 0; i < config.overlays.size(); ++i) {
      ordered_json o;
      o["label"] = config.overlays[i].label;
      o["kind"] = std::string(bound_name(config.overlays[i].bound.kind));
      if (config.overlays[i].anchor) o["anchor"] = *config.overlays[i].anchor;
      o["points"] = art.overlays[i].snr_db.size();
      summary["overlays"].push_back(o);
    }
  }

  if (!config.analyses.empty()) summary["analyses"] = ordered_json::array();
  for (const auto& ac : config.analyses) {
    const auto codec = make_codec(ac.codec);
    const auto path = out_dir / (unique_stem(ac.label) + ".csv");
    std::ostringstream csv;
    ordered_json entry;
    entry["label"] = ac.label;
    entry["codec"] = to_string(ac.codec);
    entry["file"] = path.filename().string();
    std::ostringstream line;
    line << ac.label << ": ";
    if (ac.type == AnalysisConfig::Type::dimension) {
      const DimensionEstimate est = boxcount_dimension(constellation_sampler(*codec), codec->channel_dimension(),
                                                       ac.epsilons, ac.samples, ac.seed);
      csv << "epsilon,boxes\n";
      for (std::size_t i = 0; i < est.epsilons.size(); ++i) {
        csv << format_double(est.epsilons[i]) << "," << est.counts[i] << "\n";
      }
      entry["type"] = "dimension";
      entry["estimate"] = est.dimension;
      entry["fit_residual"] = est.fit_residual;
      entry["saturated"] = est.saturated;
      line << "box-counting dimension " << fixed(est.dimension, 3) << (est.saturated ? "" : " (not saturated)");
    } else {
      const StretchProfile prof = stretch_profile(*codec, ac.deltas, ac.samples, ac.seed, ac.metric);
      csv << "delta,stretch\n";
      for (std::size_t i = 0; i < prof.deltas.size(); ++i) {
        csv << format_double(prof.deltas[i]) << "," << format_double(prof.values[i]) << "\n";
      }
      entry["type"] = "stretch";
      entry["metric"] = ac.metric == StretchMetric::torus ? "torus" : "euclidean";
      entry["estimate"] = prof.gamma;
      entry["fit_residual"] = prof.fit_residual;
      line << "stretch exponent " << fixed(prof.gamma, 3);
    }
    if (ac.reference) {
      entry["reference"] = *ac.reference;
      line << " (reference " << fixed(*ac.reference, 3) << ")";
    }
    write_file(path, csv.str());
    art.files.push_back(path);
    log << line.str() << "\n";
    summary["analyses"].push_back(entry);
  }

  if (config.plot) {
    const auto path = out_dir / config.plot_file;
    write_file(path, render_svg(art.curves, art.overlays, config.plot_options));
    art.files.push_back(path);
    summary["plot"] = path.filename().string();
  }

  const auto summary_path = out_dir / "summary.json";
  write_file(summary_path, summary.dump(2) + "\n");
  art.files.push_back(summary_path);
  return art;
}

}  // namespace jscc
