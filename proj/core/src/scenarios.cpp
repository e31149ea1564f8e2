#include "wavesim/scenarios.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wavesim/errors.hpp"
#include "wavesim/newmark_engine.hpp"
#include "wavesim/numerics.hpp"

namespace wavesim {
namespace {

using nlohmann::json;

double as_number(const json& value, const std::string& key) {
  if (!value.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& key) {
  const double d = as_number(value, key);
  if (d != std::floor(d) || std::abs(d) > 1e9) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  return static_cast<int>(d);
}

std::string as_string(const json& value, const std::string& key) {
  if (!value.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return value.get<std::string>();
}

bool as_bool(const json& value, const std::string& key) {
  if (!value.is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
  return value.get<bool>();
}

std::vector<double> as_number_array(const json& value, const std::string& key) {
  if (!value.is_array()) throw ConfigError("config key '" + key + "' must be an array");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& item : value) out.push_back(as_number(item, key));
  return out;
}

std::vector<CrackRequest> as_cracks(const json& value) {
  if (!value.is_array()) throw ConfigError("config key 'cracks' must be an array of objects");
  std::vector<CrackRequest> out;
  for (const auto& item : value) {
    if (!item.is_object()) throw ConfigError("each crack must be an object");
    CrackRequest req;
    for (const auto& [key, field] : item.items()) {
      if (key == "position") {
        req.position = as_number(field, "cracks.position");
      } else if (key == "depth_ratio") {
        req.depth_ratio = as_number(field, "cracks.depth_ratio");
      } else {
        throw ConfigError("unknown crack key '" + key + "'");
      }
    }
    out.push_back(req);
  }
  return out;
}

SimConfig parse_config_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  SimConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "length") {
      cfg.length = as_number(value, key);
    } else if (key == "width") {
      cfg.width = as_number(value, key);
    } else if (key == "height") {
      cfg.height = as_number(value, key);
    } else if (key == "shear_k") {
      cfg.shear_k = as_number(value, key);
    } else if (key == "material") {
      cfg.material = as_string(value, key);
    } else if (key == "E") {
      cfg.E = as_number(value, key);
    } else if (key == "nu") {
      cfg.nu = as_number(value, key);
    } else if (key == "rho") {
      cfg.rho = as_number(value, key);
    } else if (key == "element") {
      cfg.element = as_string(value, key);
    } else if (key == "n_elements") {
      cfg.n_elements = as_int(value, key);
    } else if (key == "epw") {
      cfg.epw = as_number(value, key);
    } else if (key == "bc_left") {
      cfg.bc_left = as_string(value, key);
    } else if (key == "bc_right") {
      cfg.bc_right = as_string(value, key);
    } else if (key == "cracks") {
      cfg.cracks = as_cracks(value);
    } else if (key == "excitation") {
      cfg.excitation = as_string(value, key);
    } else if (key == "fc") {
      cfg.fc = as_number(value, key);
    } else if (key == "fc2") {
      cfg.fc2 = as_number(value, key);
    } else if (key == "cycles") {
      cfg.cycles = as_int(value, key);
    } else if (key == "load_position") {
      cfg.load_position = as_number(value, key);
    } else if (key == "load_component") {
      cfg.load_component = as_string(value, key);
    } else if (key == "spp") {
      cfg.spp = as_int(value, key);
    } else if (key == "duration") {
      cfg.duration = as_number(value, key);
    } else if (key == "f_max_factor") {
      cfg.f_max_factor = as_number(value, key);
    } else if (key == "sigma") {
      cfg.sigma = as_number(value, key);
    } else if (key == "window_factor") {
      cfg.window_factor = as_number(value, key);
    } else if (key == "solver") {
      cfg.solver = as_string(value, key);
    } else if (key == "pick_threshold") {
      cfg.pick_threshold = as_number(value, key);
    } else if (key == "detection_threshold") {
      cfg.detection_threshold = as_number(value, key);
    } else if (key == "observe_positions") {
      cfg.observe_positions = as_number_array(value, key);
    } else if (key == "snapshot_times") {
      cfg.snapshot_times = as_number_array(value, key);
    } else if (key == "write_spectrum") {
      cfg.write_spectrum = as_bool(value, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return cfg;
}

MaterialProps resolve_material(const SimConfig& cfg) {
  if (cfg.material == "steel") return MaterialProps::steel();
  if (cfg.material == "aluminum") return MaterialProps::aluminum();
  if (cfg.material == "custom") {
    try {
      return MaterialProps::make(cfg.E, cfg.nu, cfg.rho);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("custom material: ") + e.what());
    }
  }
  throw ConfigError("unknown material '" + cfg.material + "' (steel, aluminum, custom)");
}

ElementKind resolve_kind(const std::string& name) {
  if (name == "bswi_rod") return ElementKind::BswiRod;
  if (name == "bswi_beam") return ElementKind::BswiBeam;
  if (name == "conventional_rod") return ElementKind::ConventionalRod;
  if (name == "conventional_beam") return ElementKind::ConventionalBeam;
  throw ConfigError("unknown element '" + name +
                    "' (bswi_rod, bswi_beam, conventional_rod, conventional_beam)");
}

BoundaryCondition resolve_bc(const std::string& name, const std::string& key) {
  if (name == "free") return BoundaryCondition::Free;
  if (name == "clamped") return BoundaryCondition::Clamped;
  throw ConfigError("config key '" + key + "' must be 'free' or 'clamped'");
}

void validate(const SimConfig& cfg) {
  if (!(cfg.length > 0.0)) throw ConfigError("length must be positive");
  if (!(cfg.width > 0.0 && cfg.height > 0.0)) throw ConfigError("section sides must be positive");
  if (!(cfg.shear_k > 0.0)) throw ConfigError("shear_k must be positive");
  if (cfg.n_elements < 0) throw ConfigError("n_elements must be non-negative");
  if (cfg.n_elements == 0 && !(cfg.epw > 0.0)) {
    throw ConfigError("epw must be positive when n_elements is derived");
  }
  if (!(cfg.fc > 0.0)) throw ConfigError("fc must be positive");
  if (cfg.excitation == "dual" && !(cfg.fc2 > 0.0)) throw ConfigError("fc2 must be positive");
  if (cfg.excitation != "hanning" && cfg.excitation != "dual") {
    throw ConfigError("excitation must be 'hanning' or 'dual'");
  }
  if (cfg.cycles < 1) throw ConfigError("cycles must be at least 1");
  if (cfg.spp < 1) throw ConfigError("spp must be at least 1");
  if (!(cfg.duration > 0.0)) throw ConfigError("duration must be positive");
  if (!(cfg.f_max_factor > 0.0)) throw ConfigError("f_max_factor must be positive");
  if (cfg.sigma < 0.0) throw ConfigError("sigma must be non-negative");
  if (!(cfg.window_factor >= 1.0)) throw ConfigError("window_factor must be at least 1");
  if (cfg.solver != "lwfem" && cfg.solver != "newmark") {
    throw ConfigError("solver must be 'lwfem' or 'newmark'");
  }
  if (!(cfg.pick_threshold > 0.0 && cfg.pick_threshold < 1.0)) {
    throw ConfigError("pick_threshold must lie in (0, 1)");
  }
  if (!(cfg.detection_threshold >= 0.0 && cfg.detection_threshold < 1.0)) {
    throw ConfigError("detection_threshold must lie in [0, 1)");
  }
  if (!(cfg.load_position >= 0.0 && cfg.load_position <= cfg.length)) {
    throw ConfigError("load_position must lie in [0, length]");
  }
  if (cfg.load_component != "deflection" && cfg.load_component != "axial" &&
      cfg.load_component != "rotation") {
    throw ConfigError("load_component must be 'deflection', 'axial', or 'rotation'");
  }
  for (const auto& crack : cfg.cracks) {
    if (!(crack.position > 0.0 && crack.position < cfg.length)) {
      throw ConfigError("crack position must lie strictly inside (0, length)");
    }
    if (!(crack.depth_ratio >= 0.0 && crack.depth_ratio < 1.0)) {
      throw ConfigError("crack depth_ratio must lie in [0, 1)");
    }
  }
  for (double x : cfg.observe_positions) {
    if (!(x >= 0.0 && x <= cfg.length)) {
      throw ConfigError("observe position outside [0, length]");
    }
  }
  for (double t : cfg.snapshot_times) {
    if (!(t >= 0.0 && t <= cfg.duration)) {
      throw ConfigError("snapshot time outside [0, duration]");
    }
  }
}

}  // namespace

SimConfig parse_config_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config_json(doc);
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

std::string config_to_json(const SimConfig& cfg) {
  json j;
  j["length"] = cfg.length;
  j["width"] = cfg.width;
  j["height"] = cfg.height;
  j["shear_k"] = cfg.shear_k;
  j["material"] = cfg.material;
  j["E"] = cfg.E;
  j["nu"] = cfg.nu;
  j["rho"] = cfg.rho;
  j["element"] = cfg.element;
  j["n_elements"] = cfg.n_elements;
  j["epw"] = cfg.epw;
  j["bc_left"] = cfg.bc_left;
  j["bc_right"] = cfg.bc_right;
  j["cracks"] = json::array();
  for (const auto& crack : cfg.cracks) {
    j["cracks"].push_back({{"position", crack.position}, {"depth_ratio", crack.depth_ratio}});
  }
  j["excitation"] = cfg.excitation;
  j["fc"] = cfg.fc;
  j["fc2"] = cfg.fc2;
  j["cycles"] = cfg.cycles;
  j["load_position"] = cfg.load_position;
  j["load_component"] = cfg.load_component;
  j["spp"] = cfg.spp;
  j["duration"] = cfg.duration;
  j["f_max_factor"] = cfg.f_max_factor;
  j["sigma"] = cfg.sigma;
  j["window_factor"] = cfg.window_factor;
  j["solver"] = cfg.solver;
  j["pick_threshold"] = cfg.pick_threshold;
  j["detection_threshold"] = cfg.detection_threshold;
  j["observe_positions"] = cfg.observe_positions;
  j["snapshot_times"] = cfg.snapshot_times;
  j["write_spectrum"] = cfg.write_spectrum;
  return j.dump(2);
}

RunResult run_scenario(const SimConfig& config, int threads) {
  RunResult run;
  run.config = config;
  SimConfig& cfg = run.config;
  validate(cfg);

  const MaterialProps mat = resolve_material(cfg);
  cfg.E = mat.E;
  cfg.nu = mat.nu;
  cfg.rho = mat.rho;
  const SectionProps sec = SectionProps::rect(cfg.width, cfg.height, cfg.shear_k);
  const ElementKind kind = resolve_kind(cfg.element);
  const bool is_rod = kind == ElementKind::BswiRod || kind == ElementKind::ConventionalRod;
  if (is_rod && cfg.load_component == "rotation") {
    throw ConfigError("rotation loads need a beam element");
  }

  const bool dual = cfg.excitation == "dual";
  const double f_top = dual ? std::max(cfg.fc, cfg.fc2) : cfg.fc;
  const double f_max = cfg.f_max_factor * f_top;
  const SamplingPlan plan = sampling_plan(f_max, cfg.spp, cfg.duration);
  run.dt = plan.dt;
  run.steps = static_cast<std::size_t>(std::floor(cfg.duration / plan.dt)) + 1;

  run.excitation = dual ? dual_toneburst(cfg.fc, cfg.fc2, plan.dt)
                        : hanning_toneburst(cfg.fc, cfg.cycles, plan.dt);

  if (cfg.n_elements == 0) {
    const double c0 = std::sqrt(mat.E / mat.rho);
    const double lambda_min = c0 / f_max;
    cfg.n_elements =
        std::max(1, static_cast<int>(std::lround(cfg.length * cfg.epw / lambda_min)));
  }
  if (cfg.observe_positions.empty()) {
    cfg.observe_positions = {0.0, 0.5 * cfg.length, cfg.length};
  }

  std::vector<CrackSpec> cracks;
  cracks.reserve(cfg.cracks.size());
  for (const auto& req : cfg.cracks) {
    cracks.push_back(CrackSpec{req.position, req.depth_ratio * sec.h, 0.0, 0.0});
  }
  run.mesh = build_mesh(cfg.length, cfg.n_elements, kind, mat, sec, cracks,
                        resolve_bc(cfg.bc_left, "bc_left"), resolve_bc(cfg.bc_right, "bc_right"));
  run.system = assemble(run.mesh);

  const int load_node = run.system.node_nearest(cfg.load_position);
  const int load_comp = cfg.load_component == "rotation" ? 1 : 0;
  Eigen::VectorXd pattern;
  try {
    pattern = build_load_vector(run.system, LoadSpec{load_node, load_comp}, 1.0);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("load placement: ") + e.what());
  }

  const auto t_start = std::chrono::steady_clock::now();
  if (cfg.solver == "lwfem") {
    LaplaceGrid grid = LaplaceGrid::plan(plan.dt, cfg.duration, cfg.window_factor);
    if (cfg.sigma > 0.0) grid.sigma = cfg.sigma;
    run.sigma = grid.sigma;
    run.grid_N = grid.N;
    TimeSeriesField full = run_lwfem(run.system, pattern, run.excitation, grid, threads);
    run.field.dt = full.dt;
    run.field.labels = full.labels;
    run.field.values = full.values.leftCols(static_cast<Eigen::Index>(run.steps));
  } else {
    NewmarkParams params;
    params.dt = plan.dt;
    params.steps = run.steps;
    run.field = newmark_solve(run.system, pattern, run.excitation.samples, params);
  }
  const auto t_end = std::chrono::steady_clock::now();
  run.wall_seconds = std::chrono::duration<double>(t_end - t_start).count();
  return run;
}

int observe_dof(const RunResult& run, double x) {
  const int node = run.system.node_nearest(x);
  const int dof = run.system.dof_index(node, 0);
  if (dof < 0) {
    std::ostringstream msg;
    msg << "observe position " << x << " lands on a clamped DOF";
    throw std::domain_error(msg.str());
  }
  return dof;
}

ScalarSeries series_at(const RunResult& run, double x) {
  return run.field.row(observe_dof(run, x));
}

TimeSeriesField deflection_field(const RunResult& run, Eigen::VectorXd* positions) {
  const auto n_nodes = static_cast<Eigen::Index>(run.system.n_nodes);
  TimeSeriesField field;
  field.dt = run.field.dt;
  field.values.setZero(n_nodes, run.field.values.cols());
  if (positions != nullptr) positions->resize(n_nodes);
  for (Eigen::Index node = 0; node < n_nodes; ++node) {
    if (positions != nullptr) {
      (*positions)(node) = run.system.node_positions[static_cast<std::size_t>(node)];
    }
    const int dof = run.system.dof_index(static_cast<int>(node), 0);
    if (dof >= 0) field.values.row(node) = run.field.values.row(dof);
  }
  return field;
}

double measure_group_velocity(const RunResult& run) {
  const double L = run.config.length;
  const Envelope env = envelope(series_at(run, run.config.load_position));
  ArrivalSet picked = pick_arrivals(env, run.config.pick_threshold, run.excitation.duration);
  if (picked.arrivals.size() < 2) {
    throw NumericalError("group velocity needs an echo at the driving point; extend the duration");
  }
  if (picked.arrivals.size() > 4) picked.arrivals.resize(4);
  std::vector<double> paths(picked.arrivals.size());
  for (std::size_t i = 0; i < paths.size(); ++i) {
    paths[i] = 2.0 * static_cast<double>(i) * L;
  }
  return group_velocity(picked, paths);
}

CrackMetrics run_crack_metrics(const RunResult& run) {
  const double crack_x = run.mesh.cracks.empty() ? -1.0 : run.mesh.cracks.front().position;
  return crack_metrics(series_at(run, run.config.length), run.excitation.duration,
                       run.config.length, crack_x, run.config.detection_threshold,
                       run.config.pick_threshold);
}

}  // namespace wavesim
