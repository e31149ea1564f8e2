#include "wavesim/excitation.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "wavesim/numerics.hpp"

namespace wavesim {

namespace {

constexpr double kWindowEdge = 1.0 - 1e-12;

// Hanning window opening 0 -> 1 over the burst; exactly zero at and beyond the edges.
double window_value(double w) {
  if (w <= 0.0 || w >= kWindowEdge) return 0.0;
  return 0.5 * (1.0 - std::cos(2.0 * M_PI * w));
}

void check_burst_args(double fc, int n_cycles) {
  if (!(fc > 0.0)) throw std::domain_error("toneburst: center frequency must be positive");
  if (n_cycles < 1) throw std::domain_error("toneburst: need at least one cycle");
}

SampledSignal sample_burst(double dt, double duration, double fc_warn,
                           double (*value)(double, const double*), const double* args) {
  if (!(dt > 0.0)) throw std::domain_error("toneburst: dt must be positive");
  SampledSignal sig;
  sig.dt = dt;
  sig.duration = duration;
  if (dt > 1.0 / (20.0 * fc_warn)) {
    std::fprintf(stderr,
                 "warning: toneburst sampled at dt = %g s, coarser than 1/20 of the %g Hz "
                 "carrier period\n",
                 dt, fc_warn);
    sig.undersampled = true;
  }
  const auto n = static_cast<std::size_t>(duration / dt) + 1;
  sig.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sig.samples[i] = value(static_cast<double>(i) * dt, args);
  }
  return sig;
}

double hanning_eval(double t, const double* args) {
  return hanning_toneburst_value(args[0], static_cast<int>(args[1]), t);
}

double dual_eval(double t, const double* args) {
  return dual_toneburst_value(args[0], args[1], t);
}

}  // namespace

double hanning_toneburst_value(double fc, int n_cycles, double t) {
  check_burst_args(fc, n_cycles);
  const double w = window_value(fc * t / n_cycles);
  if (w == 0.0) return 0.0;
  return w * std::sin(2.0 * M_PI * fc * t);
}

double dual_toneburst_value(double fc1, double fc2, double t) {
  check_burst_args(fc1, 1);
  check_burst_args(fc2, 1);
  const double f_window = 20e3;
  const double w = window_value(f_window * t);
  if (w == 0.0) return 0.0;
  return w * 0.5 * (std::sin(2.0 * M_PI * fc1 * t) + std::sin(2.0 * M_PI * fc2 * t));
}

SampledSignal hanning_toneburst(double fc, int n_cycles, double dt) {
  check_burst_args(fc, n_cycles);
  const double args[2] = {fc, static_cast<double>(n_cycles)};
  SampledSignal sig = sample_burst(dt, n_cycles / fc, fc, hanning_eval, args);
  sig.center_frequencies = {fc};
  return sig;
}

SampledSignal dual_toneburst(double fc1, double fc2, double dt) {
  check_burst_args(fc1, 1);
  check_burst_args(fc2, 1);
  const double args[2] = {fc1, fc2};
  SampledSignal sig = sample_burst(dt, 1.0 / 20e3, std::max(fc1, fc2), dual_eval, args);
  sig.center_frequencies = {fc1, fc2};
  return sig;
}

SamplingPlan sampling_plan(double f_max, int spp, double duration) {
  if (!(f_max > 0.0)) throw std::domain_error("sampling_plan: f_max must be positive");
  if (spp < 1) throw std::domain_error("sampling_plan: spp must be at least 1");
  if (!(duration > 0.0)) throw std::domain_error("sampling_plan: duration must be positive");
  SamplingPlan plan;
  plan.dt = 1.0 / (f_max * static_cast<double>(spp));
  plan.N = next_pow2(static_cast<std::size_t>(std::ceil(duration / plan.dt)));
  return plan;
}

}  // namespace wavesim
