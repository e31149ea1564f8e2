#ifndef WAVESIM_SCENARIOS_HPP
#define WAVESIM_SCENARIOS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "wavesim/excitation.hpp"
#include "wavesim/laplace_engine.hpp"
#include "wavesim/mesh_assembly.hpp"
#include "wavesim/signal.hpp"
#include "wavesim/wavefield_analysis.hpp"

namespace wavesim {

struct CrackRequest {
  double position = 0.0;     // [m] from the left end
  double depth_ratio = 0.0;  // a/h
};

/// One simulation, fully specified. Defaults reproduce the 1.5 m steel rod with the
/// 5-cycle 100 kHz burst.
struct SimConfig {
  // geometry
  double length = 1.5;
  double width = 0.02;
  double height = 0.02;
  double shear_k = 1.2;

  // material
  std::string material = "steel";  // steel | aluminum | custom
  double E = 0.0;
  double nu = 0.0;
  double rho = 0.0;

  // mesh
  std::string element = "bswi_rod";  // bswi_rod|bswi_beam|conventional_rod|conventional_beam
  int n_elements = 0;                // 0 derives the count from epw
  double epw = 0.45;                 // elements per minimum wavelength
  std::string bc_left = "free";      // free | clamped
  std::string bc_right = "free";
  std::vector<CrackRequest> cracks;

  // excitation and load
  std::string excitation = "hanning";  // hanning | dual
  double fc = 100e3;
  double fc2 = 200e3;
  int cycles = 5;
  double load_position = 0.0;
  std::string load_component = "deflection";  // deflection | rotation (axial on rods)

  // time discretization
  int spp = 2;                // samples per period of f_max
  double duration = 0.7e-3;   // reported window [s]
  double f_max_factor = 1.5;  // f_max = factor * highest carrier
  double sigma = 0.0;         // damping override; 0 selects the window rule
  double window_factor = 2.0;

  // solver and analysis
  std::string solver = "lwfem";  // lwfem | newmark
  double pick_threshold = 0.05;
  double detection_threshold = 0.02;
  std::vector<double> observe_positions;  // defaults to {0, L/2, L}
  std::vector<double> snapshot_times;
  bool write_spectrum = false;
};

/// Strict JSON parsing: unknown keys and out-of-range values raise ConfigError.
SimConfig parse_config_text(const std::string& json_text);
SimConfig load_config_file(const std::string& path);

/// Resolved configuration (after derivations) as a JSON object string.
std::string config_to_json(const SimConfig& config);

struct RunResult {
  SimConfig config;  // resolved: n_elements and observe_positions filled in
  double dt = 0.0;
  std::size_t steps = 0;     // samples in the reported window
  double sigma = 0.0;        // 0 for the time-domain solver
  std::size_t grid_N = 0;    // 0 for the time-domain solver
  SampledSignal excitation;
  Mesh1D mesh;
  GlobalSystem system;
  TimeSeriesField field;     // reduced DOFs x steps
  double wall_seconds = 0.0;
};

/// Build, excite, and solve one configuration. threads = 0 uses WAVESIM_THREADS or
/// the hardware count.
RunResult run_scenario(const SimConfig& config, int threads = 0);

/// Reduced DOF index of the primary component (axial/deflection) at the node nearest x.
int observe_dof(const RunResult& run, double x);

/// History of the primary component at the node nearest x.
ScalarSeries series_at(const RunResult& run, double x);

/// Per-node primary-component field (clamped nodes zero-filled) with node positions,
/// ready for snapshots.
TimeSeriesField deflection_field(const RunResult& run, Eigen::VectorXd* positions);

/// Packet speed from the echo spacing at the driving point of an end-excited
/// structure: least-squares slope over round-trip paths {0, 2L, 4L, ...}.
double measure_group_velocity(const RunResult& run);

/// Crack metrics of the far-end history against the first crack (or the uncracked
/// reference when no crack is present).
CrackMetrics run_crack_metrics(const RunResult& run);

}  // namespace wavesim

#endif  // WAVESIM_SCENARIOS_HPP
