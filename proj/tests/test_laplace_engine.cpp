#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "wavesim/errors.hpp"
#include "wavesim/excitation.hpp"
#include "wavesim/laplace_engine.hpp"
#include "wavesim/mesh_assembly.hpp"
#include "wavesim/newmark_engine.hpp"
#include "wavesim/numerics.hpp"

using namespace wavesim;

namespace {

const MaterialProps kSteel = MaterialProps::steel();
const SectionProps kSec = SectionProps::rect(0.02, 0.02);

GlobalSystem cracked_beam_system() {
  const std::vector<CrackSpec> crack{{0.14, 0.2 * kSec.h, 0.0, 0.0}};
  return assemble(build_mesh(0.3, 3, ElementKind::BswiBeam, kSteel, kSec, crack));
}

}  // namespace

TEST_CASE("grid planning: power-of-two window with wraparound damping") {
  const LaplaceGrid grid = LaplaceGrid::plan(1e-6, 0.7e-3, 2.0, 1e-3);
  CHECK((grid.N & (grid.N - 1)) == 0);
  CHECK(grid.window() >= 2.0 * 0.7e-3);
  CHECK(grid.sigma == doctest::Approx(std::log(1e3) / grid.window()));
  CHECK(grid.omega(0) == 0.0);
  CHECK(grid.omega(1) == doctest::Approx(2.0 * M_PI / grid.window()));
  CHECK(grid.s(3) == std::complex<double>(grid.sigma, grid.omega(3)));
}

TEST_CASE("forward then inverse transform reproduces a burst") {
  const double dt = 1e-6;
  const SampledSignal burst = hanning_toneburst(100e3, 5, dt);
  const LaplaceGrid grid = LaplaceGrid::plan(dt, 0.4e-3);
  const Eigen::VectorXcd spectrum = forward_transform(burst.samples, grid);
  REQUIRE(spectrum.size() == static_cast<Eigen::Index>(grid.N));

  Eigen::MatrixXcd half(1, grid.N / 2 + 1);
  half.row(0) = spectrum.head(grid.N / 2 + 1);
  const TimeSeriesField back = inverse_transform(half, grid);
  REQUIRE(back.n_steps() == grid.N);

  double peak = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i < burst.samples.size(); ++i) {
    peak = std::max(peak, std::abs(burst.samples[i]));
    err = std::max(err, std::abs(back.values(0, static_cast<Eigen::Index>(i)) -
                                 burst.samples[i]));
  }
  CHECK(err < 1e-9 * peak);
}

TEST_CASE("transform rejects signals longer than the planned window") {
  const LaplaceGrid grid{8, 1e-6, 1e3};
  CHECK_THROWS_AS((void)forward_transform(std::vector<double>(9, 1.0), grid), NumericalError);
}

TEST_CASE("condensed solve equals the full complex solve on a cracked beam") {
  const GlobalSystem sys = cracked_beam_system();
  const Eigen::VectorXd pattern = build_load_vector(sys, LoadSpec{0, 0}, 1.0);
  CondensedSolver solver(sys);
  for (double omega : {2.0e4, 4.0e5, 1.3e6}) {
    const std::complex<double> s(3.0e3, omega);
    const Eigen::VectorXcd condensed = solver.solve(s, pattern, {1.0, 0.0});
    const Eigen::VectorXcd full = solve_full(sys, s, pattern, {1.0, 0.0});
    CHECK((condensed - full).norm() < 1e-10 * full.norm());
  }
}

TEST_CASE("condensed pipeline equals the dense pipeline end to end") {
  const GlobalSystem sys = cracked_beam_system();
  const Eigen::VectorXd pattern = build_load_vector(sys, LoadSpec{0, 0}, 1.0);
  const double dt = 2e-6;
  const SampledSignal burst = hanning_toneburst(100e3, 5, dt);
  const LaplaceGrid grid = LaplaceGrid::plan(dt, 0.2e-3);
  const TimeSeriesField fast = run_lwfem(sys, pattern, burst, grid);
  const TimeSeriesField dense =
      run_laplace_dense(Eigen::MatrixXd(sys.M), Eigen::MatrixXd(sys.K), pattern, burst, grid);
  const double scale = dense.values.cwiseAbs().maxCoeff();
  CHECK((fast.values - dense.values).cwiseAbs().maxCoeff() < 1e-9 * scale);
}

TEST_CASE("frequency sweep is bit-identical for any thread count") {
  const GlobalSystem sys = cracked_beam_system();
  const Eigen::VectorXd pattern = build_load_vector(sys, LoadSpec{0, 0}, 1.0);
  const double dt = 2e-6;
  const SampledSignal burst = hanning_toneburst(100e3, 5, dt);
  const LaplaceGrid grid = LaplaceGrid::plan(dt, 0.2e-3);
  const TimeSeriesField one = run_lwfem(sys, pattern, burst, grid, 1);
  const TimeSeriesField four = run_lwfem(sys, pattern, burst, grid, 4);
  CHECK((one.values - four.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single oscillator matches a refined time-domain oracle") {
  // m u'' + k u = f, f0 ~ 1 kHz
  const double m = 1.0;
  const double k = std::pow(2.0 * M_PI * 1000.0, 2);
  Eigen::MatrixXd M(1, 1), K(1, 1);
  M << m;
  K << k;
  const Eigen::VectorXd pattern = Eigen::VectorXd::Ones(1);

  const double duration = 8e-3;
  const double dt = 5e-5;  // 20 samples per forcing period
  const SampledSignal burst = hanning_toneburst(1000.0, 5, dt);
  const LaplaceGrid grid = LaplaceGrid::plan(dt, duration);
  const TimeSeriesField lap = run_laplace_dense(M, K, pattern, burst, grid);

  const double dt_ref = dt / 64.0;
  const SampledSignal fine = hanning_toneburst(1000.0, 5, dt_ref);
  Eigen::SparseMatrix<double> Ms(1, 1), Ks(1, 1);
  Ms.insert(0, 0) = m;
  Ks.insert(0, 0) = k;
  NewmarkParams params;
  params.dt = dt_ref;
  params.steps = static_cast<std::size_t>(duration / dt_ref) + 1;
  const TimeSeriesField ref = newmark_solve(Ms, Ks, pattern, fine.samples, params);

  double num = 0.0;
  double den = 0.0;
  const auto steps = static_cast<Eigen::Index>(duration / dt) + 1;
  for (Eigen::Index i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double want = interp_linear(Eigen::VectorXd(ref.values.row(0)), dt_ref, t);
    num += std::pow(lap.values(0, i) - want, 2);
    den += want * want;
  }
  CHECK(std::sqrt(num / den) < 0.01);
}
