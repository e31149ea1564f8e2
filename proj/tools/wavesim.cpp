#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wavesim/csv_io.hpp"
#include "wavesim/errors.hpp"
#include "wavesim/newmark_engine.hpp"
#include "wavesim/numerics.hpp"
#include "wavesim/scenarios.hpp"
#include "wavesim/svg_plot.hpp"
#include "wavesim/wavefield_analysis.hpp"

#ifndef WAVESIM_VERSION
#define WAVESIM_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wavesim;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;

  std::optional<std::string> solver;
  std::optional<std::string> element;
  std::optional<std::string> excitation;
  std::optional<std::string> material;
  std::optional<int> spp;
  std::optional<int> elements;
  std::optional<int> cycles;
  std::optional<double> epw;
  std::optional<double> duration;
  std::optional<double> fc;
  std::optional<double> fc2;
  std::optional<double> length;
  std::optional<double> load_position;
  std::optional<double> sigma;
  std::optional<bool> write_spectrum;
};

void register_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "Scenario JSON file")->required();
  sub->add_option("--out", o.out_dir, "Output directory (created if missing)");
  sub->add_option("--threads", o.threads,
                  "Worker threads; 0 uses WAVESIM_THREADS or the hardware count");

  sub->add_option("--solver", o.solver, "Override: lwfem | newmark");
  sub->add_option("--element", o.element,
                  "Override: bswi_rod | bswi_beam | conventional_rod | conventional_beam");
  sub->add_option("--excitation", o.excitation, "Override: hanning | dual");
  sub->add_option("--material", o.material, "Override: steel | aluminum");
  sub->add_option("--spp", o.spp, "Override: samples per period of f_max");
  sub->add_option("--elements", o.elements, "Override: explicit element count");
  sub->add_option("--cycles", o.cycles, "Override: burst cycle count");
  sub->add_option("--epw", o.epw, "Override: elements per minimum wavelength");
  sub->add_option("--duration", o.duration, "Override: simulated window [s]");
  sub->add_option("--fc", o.fc, "Override: carrier frequency [Hz]");
  sub->add_option("--fc2", o.fc2, "Override: second carrier for the dual burst [Hz]");
  sub->add_option("--length", o.length, "Override: structure length [m]");
  sub->add_option("--load-position", o.load_position, "Override: excitation point [m]");
  sub->add_option("--sigma", o.sigma, "Override: Laplace damping parameter [1/s]");
  sub->add_flag_callback(
      "--write-spectrum", [&o] { o.write_spectrum = true; },
      "Also write spectrum.csv (frequency content of excitation and responses)");
}

void apply_overrides(SimConfig& cfg, const CommonOpts& o) {
  if (o.solver) cfg.solver = *o.solver;
  if (o.element) cfg.element = *o.element;
  if (o.excitation) cfg.excitation = *o.excitation;
  if (o.material) {
    cfg.material = *o.material;
    cfg.E = cfg.nu = cfg.rho = 0.0;
  }
  if (o.spp) cfg.spp = *o.spp;
  if (o.elements) cfg.n_elements = *o.elements;
  if (o.epw) {
    cfg.epw = *o.epw;
    if (!o.elements) cfg.n_elements = 0;  // let the EPW drive the count again
  }
  if (o.cycles) cfg.cycles = *o.cycles;
  if (o.duration) cfg.duration = *o.duration;
  if (o.fc) cfg.fc = *o.fc;
  if (o.fc2) cfg.fc2 = *o.fc2;
  if (o.length) cfg.length = *o.length;
  if (o.load_position) cfg.load_position = *o.load_position;
  if (o.sigma) cfg.sigma = *o.sigma;
  if (o.write_spectrum) cfg.write_spectrum = *o.write_spectrum;
}

SimConfig load_with_overrides(const CommonOpts& o) {
  SimConfig cfg = load_config_file(o.config_path);
  apply_overrides(cfg, o);
  return cfg;
}

bool is_beam(const SimConfig& cfg) {
  return cfg.element == "bswi_beam" || cfg.element == "conventional_beam";
}

std::string component_label(const SimConfig& cfg) { return is_beam(cfg) ? "w" : "u"; }

Eigen::VectorXd time_axis(const RunResult& run) {
  Eigen::VectorXd t(static_cast<Eigen::Index>(run.steps));
  for (Eigen::Index i = 0; i < t.size(); ++i) t[i] = run.dt * static_cast<double>(i);
  return t;
}

json config_json(const SimConfig& cfg) { return json::parse(config_to_json(cfg)); }

json resolved_json(const RunResult& run) {
  json j;
  j["dt_s"] = run.dt;
  j["steps"] = run.steps;
  j["sigma"] = run.sigma;
  j["grid_N"] = run.grid_N;
  j["n_elements"] = run.config.n_elements;
  j["n_dof"] = run.system.n_dof;
  j["wall_seconds"] = run.wall_seconds;
  return j;
}

void write_run_json(const fs::path& dir, const json& meta) {
  std::ofstream out(dir / "run.json");
  if (!out) throw NumericalError("cannot write " + (dir / "run.json").string());
  out << meta.dump(2) << "\n";
}

json crack_metrics_json(const CrackMetrics& m) {
  json j;
  j["direct_amplitude"] = m.direct_amplitude;
  j["direct_time_s"] = m.direct_time;
  j["measured_speed_m_per_s"] = m.measured_speed;
  j["flaw_amplitude"] = m.flaw_amplitude;
  j["flaw_arrival_s"] = m.flaw_arrival;
  j["flaw_arrival_count"] = m.flaw_arrival_count;
  j["below_detection"] = m.below_detection;
  return j;
}

/// Total time the envelope spends at or above half of its window maximum. Multi-lobe
/// rows (several arrivals at one carrier) accumulate; that is the dispersion signature.
double half_amplitude_duration(const Eigen::VectorXd& row, double dt) {
  const double top = row.maxCoeff();
  if (top <= 0.0) return 0.0;
  const double level = 0.5 * top;
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (row[i] >= level) ++count;
  }
  return dt * static_cast<double>(count);
}

std::string conventional_counterpart(const std::string& element) {
  if (element == "bswi_rod") return "conventional_rod";
  if (element == "bswi_beam") return "conventional_beam";
  return element;
}

void write_waveforms(const fs::path& dir, const RunResult& run) {
  const std::string comp = component_label(run.config);
  const Eigen::VectorXd t = time_axis(run);
  std::vector<std::string> headers{"time_s"};
  std::vector<Eigen::VectorXd> columns{t};
  std::vector<PlotSeries> series;
  for (double x : run.config.observe_positions) {
    const std::string label = comp + "@x=" + format_number(x);
    const ScalarSeries s = series_at(run, x);
    headers.push_back(label);
    columns.push_back(s.samples);
    series.push_back({label, t, s.samples});
  }
  write_csv((dir / "waveforms.csv").string(), headers, columns);
  PlotOptions opt;
  opt.title = run.config.element + " / " + run.config.solver;
  opt.x_label = "time [s]";
  opt.y_label = comp + " [m]";
  write_svg_plot((dir / "waveforms.svg").string(), series, opt);
}

void write_snapshots(const fs::path& dir, const RunResult& run) {
  if (run.config.snapshot_times.empty()) return;
  const double t_max = run.dt * static_cast<double>(run.steps - 1);
  for (double t : run.config.snapshot_times) {
    if (!(t >= 0.0 && t <= run.config.duration)) {
      throw ConfigError("snapshot time " + format_number(t) + " outside [0, duration]");
    }
  }
  Eigen::VectorXd positions;
  const TimeSeriesField field = deflection_field(run, &positions);
  std::vector<std::string> headers{"position_m"};
  std::vector<Eigen::VectorXd> columns{positions};
  for (double t : run.config.snapshot_times) {
    const Snapshot snap = snapshot(field, positions, std::min(t, t_max));
    headers.push_back("t=" + format_number(snap.time));
    columns.push_back(snap.values);
  }
  write_csv((dir / "snapshots.csv").string(), headers, columns);
}

void write_spectrum_csv(const fs::path& dir, const RunResult& run) {
  if (!run.config.write_spectrum) return;
  const auto n = static_cast<Eigen::Index>(run.steps);
  Eigen::FFT<double> fft;
  const auto magnitude = [&](const Eigen::VectorXd& samples) {
    std::vector<double> padded(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < std::min(n, samples.size()); ++i) {
      padded[static_cast<std::size_t>(i)] = samples[i];
    }
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, padded);
    Eigen::VectorXd mag(n / 2 + 1);
    for (Eigen::Index k = 0; k <= n / 2; ++k) {
      mag[k] = std::abs(spec[static_cast<std::size_t>(k)]);
    }
    return mag;
  };

  const double df = 1.0 / (run.dt * static_cast<double>(n));
  Eigen::VectorXd freq(n / 2 + 1);
  for (Eigen::Index k = 0; k < freq.size(); ++k) freq[k] = df * static_cast<double>(k);

  Eigen::VectorXd burst = Eigen::VectorXd::Zero(n);
  const auto n_burst =
      std::min<std::size_t>(run.excitation.samples.size(), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < n_burst; ++i) {
    burst[static_cast<Eigen::Index>(i)] = run.excitation.samples[i];
  }

  std::vector<std::string> headers{"frequency_hz", "excitation_mag"};
  std::vector<Eigen::VectorXd> columns{freq, magnitude(burst)};
  const std::string comp = component_label(run.config);
  for (double x : run.config.observe_positions) {
    headers.push_back("mag_" + comp + "@x=" + format_number(x));
    columns.push_back(magnitude(series_at(run, x).samples));
  }
  write_csv((dir / "spectrum.csv").string(), headers, columns);
}

json base_metadata(const std::string& command, const CommonOpts& o) {
  json meta;
  meta["command"] = command;
  meta["version"] = WAVESIM_VERSION;
  meta["threads_requested"] = o.threads;
  return meta;
}

int cmd_simulate(const CommonOpts& o) {
  const SimConfig cfg = load_with_overrides(o);
  const RunResult run = run_scenario(cfg, o.threads);
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);

  write_waveforms(dir, run);
  write_snapshots(dir, run);
  write_spectrum_csv(dir, run);

  json metrics;
  try {
    metrics["group_velocity_m_per_s"] = measure_group_velocity(run);
  } catch (const NumericalError& e) {
    metrics["group_velocity_note"] = e.what();
  }
  if (run.config.cracks.empty()) {
    metrics["crack"] = "no crack";
  } else {
    metrics["crack"] = crack_metrics_json(run_crack_metrics(run));
  }

  json meta = base_metadata("simulate", o);
  meta["config"] = config_json(run.config);
  meta["resolved"] = resolved_json(run);
  meta["metrics"] = metrics;
  write_run_json(dir, meta);

  std::cout << "simulate: " << run.config.element << " / " << run.config.solver << ", "
            << run.config.n_elements << " elements, " << run.steps << " steps, wall "
            << format_number(run.wall_seconds) << " s\n";
  if (metrics.contains("group_velocity_m_per_s")) {
    std::cout << "group velocity: " << format_number(metrics["group_velocity_m_per_s"].get<double>())
              << " m/s\n";
  }
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_convergence(const CommonOpts& o, const std::string& axis, std::vector<double> values) {
  SimConfig base = load_with_overrides(o);
  if (values.empty()) {
    if (axis == "epw") {
      values = {0.15, 0.3, 0.45, 0.6};
    } else if (base.solver == "newmark") {
      values = {5, 10, 15, 20};
    } else {
      values = {1, 2, 4, 6};
    }
  }
  if (values.size() < 2) throw ConfigError("convergence needs at least two sweep values");
  std::sort(values.begin(), values.end());

  std::vector<RunResult> runs;
  std::vector<ScalarSeries> mids;
  for (double v : values) {
    SimConfig cfg = base;
    if (axis == "epw") {
      cfg.epw = v;
      cfg.n_elements = 0;
    } else {
      const double rounded = std::floor(v);
      if (!(v > 0.0) || rounded != v) {
        throw ConfigError("spp sweep values must be positive integers");
      }
      cfg.spp = static_cast<int>(rounded);
    }
    runs.push_back(run_scenario(cfg, o.threads));
    mids.push_back(series_at(runs.back(), base.length / 2.0));
  }
  const std::vector<double> deviations = measure_convergence(mids);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  Eigen::VectorXd vx(static_cast<Eigen::Index>(values.size()));
  Eigen::VectorXd dy(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    vx[static_cast<Eigen::Index>(i)] = values[i];
    dy[static_cast<Eigen::Index>(i)] = deviations[i];
  }
  write_csv((dir / "convergence.csv").string(), {axis, "deviation_vs_finest"}, {vx, dy});
  PlotOptions opt;
  opt.title = "mid-point deviation vs " + axis + " (" + base.solver + ")";
  opt.x_label = axis;
  opt.y_label = "relative L2 deviation";
  write_svg_plot((dir / "convergence.svg").string(), {{"deviation", vx, dy}}, opt);

  json meta = base_metadata("convergence", o);
  meta["axis"] = axis;
  meta["values"] = values;
  meta["deviations"] = deviations;
  meta["config"] = config_json(runs.back().config);
  meta["resolved"] = resolved_json(runs.back());
  write_run_json(dir, meta);

  for (std::size_t i = 0; i < values.size(); ++i) {
    std::cout << axis << "=" << format_number(values[i])
              << " deviation=" << format_number(deviations[i]) << "\n";
  }
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_crack_sweep(const CommonOpts& o, std::vector<double> depths,
                    const std::vector<double>& locations) {
  SimConfig base = load_with_overrides(o);
  if (base.cracks.empty()) {
    throw ConfigError("crack-sweep varies the first crack; add one to the config");
  }
  const bool by_location = !locations.empty();
  if (!by_location && depths.empty()) depths = {0.1, 0.2, 0.3, 0.4};
  const std::vector<double>& sweep = by_location ? locations : depths;

  std::vector<RunResult> runs;
  std::vector<CrackMetrics> metrics;
  for (double v : sweep) {
    SimConfig cfg = base;
    if (by_location) {
      cfg.cracks[0].position = v;
    } else {
      cfg.cracks[0].depth_ratio = v;
    }
    runs.push_back(run_scenario(cfg, o.threads));
    metrics.push_back(run_crack_metrics(runs.back()));
  }

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const auto n = static_cast<Eigen::Index>(sweep.size());
  Eigen::VectorXd depth_col(n), pos_col(n), direct_amp(n), direct_time(n), speed(n), flaw_amp(n),
      flaw_time(n), flaw_count(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& cfg = runs[static_cast<std::size_t>(i)].config;
    const auto& m = metrics[static_cast<std::size_t>(i)];
    depth_col[i] = cfg.cracks[0].depth_ratio;
    pos_col[i] = cfg.cracks[0].position;
    direct_amp[i] = m.direct_amplitude;
    direct_time[i] = m.direct_time;
    speed[i] = m.measured_speed;
    flaw_amp[i] = m.flaw_amplitude;
    flaw_time[i] = m.flaw_arrival;
    flaw_count[i] = static_cast<double>(m.flaw_arrival_count);
  }
  write_csv((dir / "crack_metrics.csv").string(),
            {"depth_ratio", "position_m", "direct_amplitude", "direct_time_s",
             "measured_speed_m_per_s", "flaw_amplitude", "flaw_arrival_s", "flaw_arrival_count"},
            {depth_col, pos_col, direct_amp, direct_time, speed, flaw_amp, flaw_time, flaw_count});

  std::vector<PlotSeries> overlay;
  for (Eigen::Index i = 0; i < n; ++i) {
    const RunResult& run = runs[static_cast<std::size_t>(i)];
    const std::string label = by_location ? ("xc=" + format_number(pos_col[i]))
                                          : ("a/h=" + format_number(depth_col[i]));
    overlay.push_back({label, time_axis(run), series_at(run, run.config.length).samples});
  }
  PlotOptions opt;
  opt.title = std::string("far-end response vs crack ") + (by_location ? "location" : "depth");
  opt.x_label = "time [s]";
  opt.y_label = component_label(base) + " [m]";
  write_svg_plot((dir / "crack_sweep.svg").string(), overlay, opt);

  json meta = base_metadata("crack-sweep", o);
  meta["sweep"] = by_location ? "location" : "depth";
  meta["values"] = sweep;
  json rows = json::array();
  for (const CrackMetrics& m : metrics) rows.push_back(crack_metrics_json(m));
  meta["metrics"] = rows;
  meta["config"] = config_json(runs.back().config);
  meta["resolved"] = resolved_json(runs.back());
  write_run_json(dir, meta);

  for (Eigen::Index i = 0; i < n; ++i) {
    std::cout << (by_location ? "xc=" : "a/h=")
              << format_number(by_location ? pos_col[i] : depth_col[i])
              << " direct=" << format_number(direct_amp[i])
              << " flaw=" << format_number(flaw_amp[i]) << " arrivals=" << flaw_count[i] << "\n";
  }
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_dispersion(const CommonOpts& o) {
  SimConfig cfg = load_with_overrides(o);
  if (cfg.excitation != "dual") {
    throw ConfigError("dispersion needs the dual toneburst (set excitation = \"dual\")");
  }
  if (cfg.n_elements == 0 && !o.epw) cfg.n_elements = 36;
  const RunResult run = run_scenario(cfg, o.threads);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const double mid = run.config.length / 2.0;
  const ScalarSeries response = series_at(run, mid);
  const Eigen::VectorXd t = time_axis(run);
  const std::string comp = component_label(run.config);
  write_csv((dir / "midpoint.csv").string(), {"time_s", comp + "@x=" + format_number(mid)},
            {t, response.samples});

  const double nyquist = 0.5 / run.dt;
  const double f_hi = std::min(1.5 * std::max(run.config.fc, run.config.fc2), 0.95 * nyquist);
  const double step = 5e3;
  std::vector<double> freqs;
  for (double f = 20e3; f <= f_hi + 0.5 * step; f += step) freqs.push_back(f);
  const Eigen::MatrixXd scalogram = cwt_spectrum(response, freqs);

  std::vector<std::string> headers{"time_s"};
  std::vector<Eigen::VectorXd> columns{t};
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    headers.push_back("mag@f=" + format_number(freqs[i]));
    columns.push_back(scalogram.row(static_cast<Eigen::Index>(i)).transpose());
  }
  write_csv((dir / "cwt.csv").string(), headers, columns);

  const auto nearest_row = [&](double f) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < freqs.size(); ++i) {
      if (std::abs(freqs[i] - f) < std::abs(freqs[best] - f)) best = i;
    }
    return best;
  };
  json carriers = json::array();
  std::vector<PlotSeries> rows_plot;
  for (double f : {run.config.fc, run.config.fc2}) {
    const std::size_t r = nearest_row(f);
    const Eigen::VectorXd row = scalogram.row(static_cast<Eigen::Index>(r)).transpose();
    json c;
    c["carrier_hz"] = f;
    c["row_hz"] = freqs[r];
    c["peak_magnitude"] = row.maxCoeff();
    c["half_amplitude_duration_s"] = half_amplitude_duration(row, run.dt);
    carriers.push_back(c);
    rows_plot.push_back({"|W| @ " + format_number(freqs[r] / 1e3) + " kHz", t, row});
  }
  PlotOptions opt;
  opt.title = "scalogram rows at the two carriers";
  opt.x_label = "time [s]";
  opt.y_label = "|W|";
  write_svg_plot((dir / "dispersion.svg").string(), rows_plot, opt);

  json meta = base_metadata("dispersion", o);
  meta["config"] = config_json(run.config);
  meta["resolved"] = resolved_json(run);
  meta["metrics"]["carriers"] = carriers;
  write_run_json(dir, meta);

  for (const auto& c : carriers) {
    std::cout << "carrier " << format_number(c["carrier_hz"].get<double>() / 1e3)
              << " kHz: half-amplitude duration "
              << format_number(c["half_amplitude_duration_s"].get<double>()) << " s\n";
  }
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_compare(const CommonOpts& o, double fem_epw, int fem_spp,
                const std::optional<int>& fem_elements) {
  SimConfig lw_cfg = load_with_overrides(o);
  lw_cfg.solver = "lwfem";
  SimConfig fem_cfg = lw_cfg;
  fem_cfg.solver = "newmark";
  fem_cfg.element = conventional_counterpart(lw_cfg.element);
  fem_cfg.spp = fem_spp;
  fem_cfg.epw = fem_epw;
  fem_cfg.n_elements = fem_elements.value_or(0);

  const RunResult lw = run_scenario(lw_cfg, o.threads);
  const RunResult fem = run_scenario(fem_cfg, o.threads);

  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const Eigen::VectorXd t = time_axis(lw);
  const std::string comp = component_label(lw.config);
  std::vector<std::string> headers{"time_s"};
  std::vector<Eigen::VectorXd> columns{t};
  std::vector<PlotSeries> series;
  json deviations = json::array();
  for (double x : lw.config.observe_positions) {
    const ScalarSeries a = series_at(lw, x);
    const ScalarSeries b = series_at(fem, x);
    Eigen::VectorXd b_on_a(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      b_on_a[i] = interp_linear(b.samples, b.dt, t[i]);
    }
    const std::string tag = comp + "@x=" + format_number(x);
    headers.push_back("lwfem:" + tag);
    headers.push_back("newmark:" + tag);
    columns.push_back(a.samples);
    columns.push_back(b_on_a);
    series.push_back({"lwfem " + tag, t, a.samples});
    series.push_back({"newmark " + tag, t, b_on_a});

    json d;
    d["x_m"] = x;
    d["l2_deviation"] = measure_convergence({a, b}).front();
    deviations.push_back(d);
  }
  write_csv((dir / "compare.csv").string(), headers, columns);
  PlotOptions opt;
  opt.title = "wavelet solver vs Newmark baseline";
  opt.x_label = "time [s]";
  opt.y_label = comp + " [m]";
  write_svg_plot((dir / "compare.svg").string(), series, opt);

  json meta = base_metadata("compare", o);
  meta["lwfem"]["config"] = config_json(lw.config);
  meta["lwfem"]["resolved"] = resolved_json(lw);
  meta["newmark"]["config"] = config_json(fem.config);
  meta["newmark"]["resolved"] = resolved_json(fem);
  meta["metrics"]["deviations"] = deviations;
  write_run_json(dir, meta);

  std::cout << "lwfem:   " << lw.config.n_elements << " elements, dt "
            << format_number(lw.dt) << " s, wall " << format_number(lw.wall_seconds) << " s\n";
  std::cout << "newmark: " << fem.config.n_elements << " elements, dt "
            << format_number(fem.dt) << " s, wall " << format_number(fem.wall_seconds) << " s\n";
  for (const auto& d : deviations) {
    std::cout << "L2 deviation at x=" << format_number(d["x_m"].get<double>()) << ": "
              << format_number(d["l2_deviation"].get<double>()) << "\n";
  }
  std::cout << "artifacts in " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D elastic-wave simulation: wavelet finite elements with a Laplace-domain solver"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string axis = "epw";
  std::vector<double> values;
  std::vector<double> depths;
  std::vector<double> locations;
  double fem_epw = 20.0;
  int fem_spp = 20;
  std::optional<int> fem_elements;

  CLI::App* sim = app.add_subcommand("simulate", "Run one scenario and write waveform artifacts");
  register_common(sim, o);

  CLI::App* conv =
      app.add_subcommand("convergence", "Sweep EPW or SPP and report deviation from the finest run");
  register_common(conv, o);
  conv->add_option("--axis", axis, "Sweep axis: epw | spp")
      ->check(CLI::IsMember({"epw", "spp"}));
  conv->add_option("--values", values, "Sweep values (comma separated)")->delimiter(',');

  CLI::App* sweep =
      app.add_subcommand("crack-sweep", "Sweep crack depth or location and tabulate flaw metrics");
  register_common(sweep, o);
  CLI::Option* d_opt =
      sweep->add_option("--depths", depths, "Depth ratios a/h to sweep (comma separated)")
          ->delimiter(',');
  CLI::Option* l_opt =
      sweep->add_option("--locations", locations, "Crack positions [m] to sweep (comma separated)")
          ->delimiter(',');
  d_opt->excludes(l_opt);

  CLI::App* disp =
      app.add_subcommand("dispersion", "Dual-carrier beam run with time-frequency output");
  register_common(disp, o);

  CLI::App* comp =
      app.add_subcommand("compare", "Run the wavelet and Newmark solvers side by side");
  register_common(comp, o);
  comp->add_option("--fem-epw", fem_epw, "Baseline elements per wavelength (default 20)");
  comp->add_option("--fem-spp", fem_spp, "Baseline samples per period (default 20)");
  comp->add_option("--fem-elements", fem_elements, "Baseline explicit element count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(o);
    if (conv->parsed()) return cmd_convergence(o, axis, values);
    if (sweep->parsed()) return cmd_crack_sweep(o, depths, locations);
    if (disp->parsed()) return cmd_dispersion(o);
    if (comp->parsed()) return cmd_compare(o, fem_epw, fem_spp, fem_elements);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
