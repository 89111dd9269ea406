// newsflow: simulate topic-based message diffusion and analyze the resulting
// volume series (Hurst exponent, fractal dimension, wavelet scaleograms).
//
// Exit codes: 0 success, 1 I/O failure, 2 configuration/validation error,
// 3 analysis-domain error (constant or too-short series).

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "newsflow/cwt.hpp"
#include "newsflow/diffusion.hpp"
#include "newsflow/errors.hpp"
#include "newsflow/io.hpp"
#include "newsflow/render.hpp"
#include "newsflow/rs_analysis.hpp"
#include "newsflow/schedule_json.hpp"
#include "newsflow/timeseries.hpp"

namespace {

struct SimulateOpts {
  std::string config;
  std::string out;
  std::int64_t steps = 1000;
  std::uint64_t seed = 1;
  std::size_t runs = 1;
};

struct HurstOpts {
  std::string input;
  std::string mode = "prefix";
  std::size_t window = 0;
  std::size_t min_n = 20;
  bool dynamics = false;
  std::string out;
};

struct CwtOpts {
  std::string input;
  int order = 1;
  std::string scales;  // "min:max:count", empty = default grid
  std::string out;
  std::string pgm;
  std::string map = "log";
  bool no_center = false;
};

struct RenderOpts {
  std::string input;
  std::string out;
  std::string map = "log";
};

nlohmann::json parse_json_file(const std::string& path) {
  const std::string text = newsflow::read_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw newsflow::ConfigError(path + " is not valid JSON: " + e.what());
  }
}

newsflow::ScaleGrid parse_scale_spec(const std::string& spec) {
  const std::size_t c1 = spec.find(':');
  const std::size_t c2 = (c1 == std::string::npos) ? std::string::npos : spec.find(':', c1 + 1);
  double a_min = 0.0, a_max = 0.0;
  std::int64_t count = 0;
  if (c1 == std::string::npos || c2 == std::string::npos ||
      !newsflow::detail::parse_double(std::string_view(spec).substr(0, c1), a_min) ||
      !newsflow::detail::parse_double(std::string_view(spec).substr(c1 + 1, c2 - c1 - 1),
                                      a_max) ||
      !newsflow::detail::parse_int(std::string_view(spec).substr(c2 + 1), count) || count < 0)
    throw newsflow::ConfigError("bad --scales '" + spec + "': expected min:max:count");
  if (count < 2) throw newsflow::ConfigError("scale count must be >= 2");
  return newsflow::ScaleGrid::log_spaced(a_min, a_max, static_cast<std::size_t>(count));
}

std::string run_summary(const newsflow::Series& series, const newsflow::EventCounters& totals,
                        std::int64_t steps) {
  std::string line = "steps=" + std::to_string(steps);
  line += " final_population=" + std::to_string(static_cast<std::int64_t>(series.values.back()));
  line += " births_spawn=" + std::to_string(totals.births_spawn);
  line += " births_repost=" + std::to_string(totals.births_repost);
  line += " deaths=" + std::to_string(totals.deaths);
  return line;
}

int cmd_simulate(const SimulateOpts& o) {
  const newsflow::ParamSchedule schedule = newsflow::schedule_from_json(parse_json_file(o.config));
  if (o.runs == 1) {
    newsflow::EventCounters totals;
    const newsflow::Series series = newsflow::run(schedule, o.steps, o.seed, &totals);
    newsflow::write_file(o.out, newsflow::write_series_csv(series));
    std::cout << run_summary(series, totals, o.steps) << '\n';
    return 0;
  }
  if (o.out.find("{run}") == std::string::npos)
    throw newsflow::ConfigError("--out must contain the placeholder {run} when --runs > 1");
  for (std::size_t i = 0; i < o.runs; ++i) {
    newsflow::EventCounters totals;
    const newsflow::Series series =
        newsflow::run(schedule, o.steps, newsflow::derive_seed(o.seed, i), &totals);
    std::string path = o.out;
    path.replace(path.find("{run}"), 5, std::to_string(i));
    newsflow::write_file(path, newsflow::write_series_csv(series));
    std::cout << "run=" << i << ' ' << run_summary(series, totals, o.steps) << '\n';
  }
  return 0;
}

int cmd_hurst(const HurstOpts& o) {
  const newsflow::Series series = newsflow::read_series_csv(newsflow::read_file(o.input));
  if (!o.dynamics) {
    const newsflow::HurstReport r = newsflow::hurst_point(series.values);
    if (newsflow::hurst_out_of_range(r))
      std::cerr << "warning: hurst=" << r.hurst << " lies outside [0,1]\n";
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["mean"] = r.mean;
    j["range"] = r.range;
    j["stddev"] = r.stddev;
    j["rs"] = r.rs;
    j["hurst"] = r.hurst;
    j["fractal_dim"] = r.fractal_dim;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  if (o.out.empty()) throw newsflow::ConfigError("--out is required with --dynamics");
  const newsflow::HurstMode mode =
      (o.mode == "window") ? newsflow::HurstMode::window : newsflow::HurstMode::prefix;
  const newsflow::Series dyn = newsflow::hurst_dynamics(series, mode, o.min_n, o.window);
  newsflow::write_file(o.out, newsflow::write_series_csv(dyn));
  return 0;
}

int cmd_cwt(const CwtOpts& o) {
  newsflow::Series series = newsflow::read_series_csv(newsflow::read_file(o.input));
  if (!o.no_center) series = newsflow::mean_centered(series);
  const newsflow::ScaleGrid grid = o.scales.empty()
                                       ? newsflow::ScaleGrid::default_grid(series.values.size())
                                       : parse_scale_spec(o.scales);
  const newsflow::Scaleogram sg = newsflow::cwt(series, newsflow::WaveletSpec{o.order}, grid);
  newsflow::write_file(o.out, newsflow::write_scaleogram_csv(sg));
  if (!o.pgm.empty()) {
    const newsflow::ValueMap map =
        (o.map == "linear") ? newsflow::ValueMap::linear : newsflow::ValueMap::log;
    newsflow::write_file(o.pgm,
                         newsflow::write_pgm(newsflow::scaleogram_to_image(magnitude(sg), map)));
  }
  return 0;
}

int cmd_render(const RenderOpts& o) {
  const newsflow::Scaleogram sg = newsflow::read_scaleogram_csv(newsflow::read_file(o.input));
  const newsflow::ValueMap map =
      (o.map == "linear") ? newsflow::ValueMap::linear : newsflow::ValueMap::log;
  newsflow::write_file(o.out,
                       newsflow::write_pgm(newsflow::scaleogram_to_image(magnitude(sg), map)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"news-stream diffusion simulator and time-series analyzer"};
  app.require_subcommand(1);

  SimulateOpts sim_opts;
  CLI::App* sim = app.add_subcommand("simulate", "run the diffusion model, write the volume CSV");
  sim->add_option("--config", sim_opts.config, "schedule JSON file")->required();
  sim->add_option("--steps", sim_opts.steps, "number of ticks (default 1000)");
  sim->add_option("--seed", sim_opts.seed, "RNG seed (default 1)");
  sim->add_option("--runs", sim_opts.runs, "ensemble size; per-run seeds derive from --seed");
  sim->add_option("--out", sim_opts.out, "output CSV path ({run} placeholder when --runs > 1)")
      ->required();

  HurstOpts hurst_opts;
  CLI::App* hurst = app.add_subcommand("hurst", "R/S Hurst exponent of a series CSV");
  hurst->add_option("input", hurst_opts.input, "series CSV")->required();
  hurst->add_option("--mode", hurst_opts.mode, "dynamics estimator (default prefix)")
      ->check(CLI::IsMember({"prefix", "window"}));
  hurst->add_option("--window", hurst_opts.window, "window length for --mode window");
  hurst->add_option("--min-n", hurst_opts.min_n, "shortest estimate length (default 20)");
  hurst->add_flag("--dynamics", hurst_opts.dynamics, "emit rolling estimates instead of a point");
  hurst->add_option("--out", hurst_opts.out, "output CSV path (required with --dynamics)");

  CwtOpts cwt_opts;
  CLI::App* cwt = app.add_subcommand("cwt", "continuous wavelet transform of a series CSV");
  cwt->add_option("input", cwt_opts.input, "series CSV")->required();
  cwt->add_option("--order", cwt_opts.order, "derivative-of-Gaussian order 1..4 (default 1)");
  cwt->add_option("--scales", cwt_opts.scales,
                  "log grid min:max:count (default 1:N/4:64)");
  cwt->add_option("--out", cwt_opts.out, "coefficient matrix CSV path")->required();
  cwt->add_option("--pgm", cwt_opts.pgm, "also write a PGM scaleogram here");
  cwt->add_option("--map", cwt_opts.map, "PGM value map (default log)")
      ->check(CLI::IsMember({"linear", "log"}));
  cwt->add_flag("--no-center", cwt_opts.no_center, "skip mean-centering before the transform");

  RenderOpts render_opts;
  CLI::App* render = app.add_subcommand("render", "turn a coefficient matrix CSV into a PGM");
  render->add_option("input", render_opts.input, "matrix CSV")->required();
  render->add_option("--out", render_opts.out, "output PGM path")->required();
  render->add_option("--map", render_opts.map, "value map (default log)")
      ->check(CLI::IsMember({"linear", "log"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_opts);
    if (hurst->parsed()) return cmd_hurst(hurst_opts);
    if (cwt->parsed()) return cmd_cwt(cwt_opts);
    if (render->parsed()) return cmd_render(render_opts);
  } catch (const newsflow::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const newsflow::AnalysisError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const newsflow::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const newsflow::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
