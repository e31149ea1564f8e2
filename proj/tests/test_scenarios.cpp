#include <doctest.h>

#include <cmath>
#include <string>

#include "wavesim/errors.hpp"
#include "wavesim/scenarios.hpp"

using namespace wavesim;

namespace {

SimConfig small_rod() {
  SimConfig cfg;
  cfg.length = 0.3;
  cfg.duration = 0.15e-3;
  return cfg;
}

}  // namespace

TEST_CASE("empty config yields the documented defaults") {
  const SimConfig cfg = parse_config_text("{}");
  CHECK(cfg.length == 1.5);
  CHECK(cfg.material == "steel");
  CHECK(cfg.element == "bswi_rod");
  CHECK(cfg.epw == 0.45);
  CHECK(cfg.spp == 2);
  CHECK(cfg.fc == 100e3);
  CHECK(cfg.cycles == 5);
  CHECK(cfg.solver == "lwfem");
  CHECK(cfg.cracks.empty());
}

TEST_CASE("config keys are parsed and strictly checked") {
  const SimConfig cfg = parse_config_text(R"({
    "length": 2.0,
    "element": "bswi_beam",
    "n_elements": 36,
    "solver": "newmark",
    "cracks": [{"position": 0.75, "depth_ratio": 0.2}],
    "observe_positions": [0.0, 1.0],
    "write_spectrum": true
  })");
  CHECK(cfg.length == 2.0);
  CHECK(cfg.n_elements == 36);
  REQUIRE(cfg.cracks.size() == 1);
  CHECK(cfg.cracks[0].position == 0.75);
  CHECK(cfg.cracks[0].depth_ratio == 0.2);
  CHECK(cfg.observe_positions.size() == 2);
  CHECK(cfg.write_spectrum);

  CHECK_THROWS_AS((void)parse_config_text(R"({"lenght": 2.0})"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text(R"({"length": "two"})"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text(R"({"n_elements": 3.5})"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text(R"({"cracks": [{"pos": 1}]})"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("not json"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("[1, 2]"), ConfigError);
}

TEST_CASE("resolved config survives a json round trip") {
  SimConfig cfg = small_rod();
  cfg.cracks.push_back({0.1, 0.25});
  cfg.element = "bswi_beam";
  const SimConfig back = parse_config_text(config_to_json(cfg));
  CHECK(back.length == cfg.length);
  CHECK(back.duration == cfg.duration);
  CHECK(back.element == cfg.element);
  REQUIRE(back.cracks.size() == 1);
  CHECK(back.cracks[0].depth_ratio == 0.25);
}

TEST_CASE("element count derivation follows elements-per-wavelength") {
  // 1.5 m steel rod, f_max = 150 kHz: lambda_min = c0 / f_max = 33.76 mm
  for (auto [epw, n] : {std::pair{0.15, 7}, {0.3, 13}, {0.45, 20}, {0.6, 27}}) {
    SimConfig cfg;
    cfg.epw = epw;
    cfg.duration = 0.1e-3;  // keep the solve small, derivation only needs geometry
    const RunResult run = run_scenario(cfg);
    CHECK(run.config.n_elements == n);
  }
}

TEST_CASE("scenario run resolves the time grid and field dimensions") {
  const RunResult run = run_scenario(small_rod());
  CHECK(run.dt == doctest::Approx(1.0 / 300e3));
  CHECK(run.steps == static_cast<std::size_t>(std::floor(0.15e-3 / run.dt)) + 1);
  CHECK(run.field.n_steps() == run.steps);
  CHECK(run.field.n_dofs() == run.system.n_dof);
  CHECK(run.sigma > 0.0);
  CHECK((run.grid_N & (run.grid_N - 1)) == 0);
  CHECK(run.excitation.duration == doctest::Approx(5.0 / 100e3));
  CHECK(run.config.observe_positions.size() == 3);
  CHECK(run.wall_seconds > 0.0);

  const ScalarSeries left = series_at(run, 0.0);
  CHECK(left.samples.size() == static_cast<Eigen::Index>(run.steps));
  CHECK(left.samples.cwiseAbs().maxCoeff() > 0.0);

  Eigen::VectorXd positions;
  const TimeSeriesField wfield = deflection_field(run, &positions);
  CHECK(wfield.values.rows() == run.system.n_nodes);
  CHECK(positions.size() == run.system.n_nodes);
  CHECK(positions(0) == 0.0);
  CHECK(positions(positions.size() - 1) == doctest::Approx(0.3));
}

TEST_CASE("scenario output is identical for any thread count") {
  const RunResult a = run_scenario(small_rod(), 1);
  const RunResult b = run_scenario(small_rod(), 3);
  CHECK((a.field.values - b.field.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("time-domain solver path fills the same shapes") {
  SimConfig cfg = small_rod();
  cfg.solver = "newmark";
  const RunResult run = run_scenario(cfg);
  CHECK(run.sigma == 0.0);
  CHECK(run.grid_N == 0);
  CHECK(run.field.n_steps() == run.steps);
  CHECK(run.field.values.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("invalid configurations are rejected as such") {
  SimConfig bad = small_rod();
  bad.solver = "modal";
  CHECK_THROWS_AS((void)run_scenario(bad), ConfigError);

  bad = small_rod();
  bad.element = "hexahedron";
  CHECK_THROWS_AS((void)run_scenario(bad), ConfigError);

  bad = small_rod();
  bad.cracks.push_back({0.75, 0.2});  // outside the 0.3 m rod, and rods take no cracks
  CHECK_THROWS_AS((void)run_scenario(bad), ConfigError);

  bad = small_rod();
  bad.bc_left = "clamped";  // load lands on the clamped end
  CHECK_THROWS_AS((void)run_scenario(bad), ConfigError);

  bad = small_rod();
  bad.spp = 0;
  CHECK_THROWS_AS((void)run_scenario(bad), ConfigError);
}

TEST_CASE("measured rod speed approaches the bar velocity") {
  SimConfig cfg;
  cfg.length = 1.5;
  cfg.duration = 0.7e-3;
  const RunResult run = run_scenario(cfg);
  const double c0 = std::sqrt(200e9 / 7800.0);
  CHECK(measure_group_velocity(run) == doctest::Approx(c0).epsilon(0.01));
}
