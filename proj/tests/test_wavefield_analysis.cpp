#include <doctest.h>

#include <cmath>
#include <vector>

#include "wavesim/excitation.hpp"
#include "wavesim/wavefield_analysis.hpp"

using namespace wavesim;

namespace {

ScalarSeries tone(double amp, double f, double dt, std::size_t n, double phase = 0.0) {
  ScalarSeries s;
  s.dt = dt;
  s.samples.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    s.samples[static_cast<Eigen::Index>(i)] =
        amp * std::sin(2.0 * M_PI * f * static_cast<double>(i) * dt + phase);
  }
  return s;
}

// packet train: hanning bursts centered at given times
ScalarSeries packets(const std::vector<double>& centers, const std::vector<double>& amps,
                     double fc, int cycles, double dt, std::size_t n) {
  ScalarSeries s;
  s.dt = dt;
  s.samples = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  const double half = 0.5 * cycles / fc;
  for (std::size_t p = 0; p < centers.size(); ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) * dt - (centers[p] - half);
      s.samples[static_cast<Eigen::Index>(i)] +=
          amps[p] * hanning_toneburst_value(fc, cycles, t);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("envelope of a pure tone is its amplitude") {
  const ScalarSeries s = tone(1.7, 50.0, 1e-3, 1000);
  const Envelope env = envelope(s);
  REQUIRE(env.magnitude.size() == 1000);
  for (int i = 50; i < 950; ++i) {
    CHECK(env.magnitude(i) == doctest::Approx(1.7).epsilon(2e-3));
    CHECK(env.magnitude(i) >= std::abs(s.samples(i)) - 1e-9);
  }
}

TEST_CASE("envelope of a burst peaks at the burst center") {
  const double dt = 0.33e-6;
  const ScalarSeries s = packets({30e-6}, {0.8}, 100e3, 5, dt, 1024);
  const Envelope env = envelope(s);
  Eigen::Index peak_at = 0;
  const double peak = env.magnitude.maxCoeff(&peak_at);
  CHECK(static_cast<double>(peak_at) * dt == doctest::Approx(30e-6).epsilon(0.02));
  CHECK(peak == doctest::Approx(0.8).epsilon(0.03));
}

TEST_CASE("arrival picking with threshold, separation, and sub-sample refinement") {
  const double dt = 1e-5;
  Envelope env;
  env.dt = dt;
  env.magnitude = Eigen::VectorXd::Zero(1200);
  auto bump = [&](double t0, double amp, double width) {
    for (int i = 0; i < 1200; ++i) {
      const double t = static_cast<double>(i) * dt;
      env.magnitude(i) += amp * std::exp(-std::pow((t - t0) / width, 2));
    }
  };
  bump(3.0e-3, 1.0, 2e-4);
  bump(7.000005e-3, 0.4, 2e-4);

  const ArrivalSet both = pick_arrivals(env, 0.1);
  REQUIRE(both.arrivals.size() == 2);
  CHECK(both.arrivals[0].time == doctest::Approx(3.0e-3).epsilon(1e-4));
  CHECK(both.arrivals[0].amplitude == doctest::Approx(1.0).epsilon(1e-3));
  // peak sits between samples; parabolic refinement must land within dt/10
  CHECK(std::abs(both.arrivals[1].time - 7.000005e-3) < dt / 10.0);
  CHECK(both.arrivals[1].amplitude == doctest::Approx(0.4).epsilon(1e-3));

  CHECK(pick_arrivals(env, 0.5).arrivals.size() == 1);

  const ArrivalSet thinned = pick_arrivals(env, 0.1, 6e-3);
  REQUIRE(thinned.arrivals.size() == 1);
  CHECK(thinned.arrivals[0].amplitude == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("group velocity recovers the slope regardless of emission delay") {
  ArrivalSet set;
  set.arrivals = {{1.5e-3, 1.0}, {2.5e-3, 0.8}, {3.5e-3, 0.6}};
  CHECK(group_velocity(set, {0.0, 5.0, 10.0}) == doctest::Approx(5000.0));
  CHECK_THROWS_AS((void)group_velocity(set, {0.0, 5.0}), std::invalid_argument);
}

TEST_CASE("snapshot normalizes and snaps to the nearest sample") {
  TimeSeriesField field;
  field.dt = 1e-3;
  field.values.resize(2, 10);
  for (int j = 0; j < 10; ++j) {
    field.values(0, j) = j;
    field.values(1, j) = -2.0 * j;
  }
  Eigen::VectorXd x(2);
  x << 0.0, 1.0;
  const Snapshot snap = snapshot(field, x, 4.1e-3);
  CHECK(snap.time == doctest::Approx(4e-3));
  CHECK(snap.values(0) == doctest::Approx(0.5));
  CHECK(snap.values(1) == doctest::Approx(-1.0));
  CHECK_THROWS_AS((void)snapshot(field, x, 10e-3), std::domain_error);
}

TEST_CASE("scalogram ridge sits on the tone frequency at unit height") {
  const double dt = 1e-6;
  const ScalarSeries s = tone(1.0, 80e3, dt, 4096);
  const std::vector<double> freqs{40e3, 60e3, 80e3, 100e3, 120e3};
  const Eigen::MatrixXd W = cwt_spectrum(s, freqs);
  REQUIRE(W.rows() == 5);
  REQUIRE(W.cols() == 4096);
  Eigen::Index best = 0;
  W.col(2048).maxCoeff(&best);
  CHECK(best == 2);
  CHECK(W(2, 2048) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(W(0, 2048) < 0.05);
  CHECK(W(4, 2048) < 0.3);
}

TEST_CASE("scalogram separates simultaneous tones") {
  const double dt = 1e-6;
  ScalarSeries s = tone(1.0, 60e3, dt, 4096);
  s.samples += tone(0.5, 120e3, dt, 4096).samples;
  const Eigen::MatrixXd W = cwt_spectrum(s, {60e3, 90e3, 120e3});
  CHECK(W(0, 2000) == doctest::Approx(1.0).epsilon(0.07));
  CHECK(W(2, 2000) == doctest::Approx(0.5).epsilon(0.07));
  CHECK(W(1, 2000) < 0.25);  // tails: e^-2 from each tone, phases can align
}

TEST_CASE("scalogram energy is consistent with signal energy") {
  const double dt = 0.5e-6;
  const SampledSignal burst = hanning_toneburst(100e3, 5, dt);
  ScalarSeries s;
  s.dt = dt;
  s.samples = Eigen::VectorXd::Zero(512);
  for (std::size_t i = 0; i < burst.samples.size(); ++i) {
    s.samples[static_cast<Eigen::Index>(i)] = burst.samples[i];
  }
  const double omega0 = 6.0;
  const int n_scales = 48;
  std::vector<double> freqs(n_scales);
  const double f_lo = 30e3;
  const double f_hi = 400e3;
  for (int j = 0; j < n_scales; ++j) {
    freqs[j] = f_lo * std::pow(f_hi / f_lo, static_cast<double>(j) / (n_scales - 1));
  }
  const double dlnf = std::log(f_hi / f_lo) / (n_scales - 1);
  const Eigen::MatrixXd W = cwt_spectrum(s, freqs, omega0);

  const double e_signal = s.samples.squaredNorm() * dt;
  const double e_cwt = W.array().square().sum() * dt * dlnf;
  const double ratio = omega0 / (2.0 * std::sqrt(M_PI)) * e_cwt / e_signal;
  CHECK(ratio > 0.8);
  CHECK(ratio < 1.2);
}

TEST_CASE("crack metrics: direct and flaw packets with gating") {
  const double c = 5000.0;
  const double L = 1.0;
  const double burst = 50e-6;
  const double t0 = 0.5 * burst;
  const double dt = 0.5e-6;
  // direct (path L), crack echo (path L + 2*0.3), far-end bounce (path 3L)
  const ScalarSeries far =
      packets({t0 + L / c, t0 + 1.6 / c, t0 + 3.0 * L / c}, {1.0, 0.12, 0.8}, 100e3, 5, dt, 2048);

  const CrackMetrics metrics = crack_metrics(far, burst, L, 0.3);
  CHECK(metrics.direct_time == doctest::Approx(t0 + L / c).epsilon(0.01));
  CHECK(metrics.direct_amplitude == doctest::Approx(1.0).epsilon(0.05));
  CHECK(metrics.measured_speed == doctest::Approx(c).epsilon(0.01));
  CHECK_FALSE(metrics.below_detection);
  CHECK(metrics.flaw_amplitude == doctest::Approx(0.12).epsilon(0.1));
  CHECK(metrics.flaw_arrival == doctest::Approx(t0 + 1.6 / c).epsilon(0.02));
  CHECK(metrics.flaw_arrival_count == 1);
}

TEST_CASE("crack metrics: faint echo drops below the detection floor") {
  const double c = 5000.0;
  const double burst = 50e-6;
  const double t0 = 0.5 * burst;
  const double dt = 0.5e-6;
  const ScalarSeries far =
      packets({t0 + 1.0 / c, t0 + 1.6 / c}, {1.0, 0.004}, 100e3, 5, dt, 2048);
  const CrackMetrics metrics = crack_metrics(far, burst, 1.0, 0.3, 0.02, 0.003);
  CHECK(metrics.below_detection);
  CHECK(metrics.flaw_amplitude == 0.0);
}

TEST_CASE("crack metrics: uncracked reference skips the flaw gate") {
  const double c = 5000.0;
  const double burst = 50e-6;
  const double t0 = 0.5 * burst;
  const double dt = 0.5e-6;
  const ScalarSeries far = packets({t0 + 1.0 / c, t0 + 3.0 / c}, {1.0, 0.8}, 100e3, 5, dt, 2048);
  const CrackMetrics metrics = crack_metrics(far, burst, 1.0, -1.0);
  CHECK(metrics.below_detection);
  CHECK(metrics.flaw_amplitude == 0.0);
  CHECK(metrics.flaw_arrival_count == 0);
  CHECK(metrics.direct_amplitude == doctest::Approx(1.0).epsilon(0.05));
}
