#include "wavesim/wavefield_analysis.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "wavesim/numerics.hpp"

namespace wavesim {

Envelope envelope(const ScalarSeries& signal) {
  const auto n = static_cast<std::size_t>(signal.samples.size());
  if (n < 8) throw std::invalid_argument("envelope: need at least 8 samples");
  std::vector<std::complex<double>> in(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = signal.samples[static_cast<Eigen::Index>(i)];
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec(n);
  fft.fwd(spec, in);
  // Analytic signal: keep DC and Nyquist, double the positive band, drop the rest.
  const std::size_t half = n / 2;
  for (std::size_t k = 1; k < half; ++k) spec[k] *= 2.0;
  for (std::size_t k = half + 1; k < n; ++k) spec[k] = 0.0;
  std::vector<std::complex<double>> analytic(n);
  fft.inv(analytic, spec);
  Envelope env;
  env.dt = signal.dt;
  env.magnitude.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    env.magnitude[static_cast<Eigen::Index>(i)] = std::abs(analytic[i]);
  }
  return env;
}

namespace {

// Parabolic vertex through samples (i-1, i, i+1); offset within [-0.5, 0.5].
Arrival interpolate_peak(const Eigen::VectorXd& y, Eigen::Index i, double dt) {
  Arrival a;
  if (i <= 0 || i + 1 >= y.size()) {
    a.time = static_cast<double>(i) * dt;
    a.amplitude = y[i];
    return a;
  }
  const double den = y[i - 1] - 2.0 * y[i] + y[i + 1];
  double delta = 0.0;
  if (den < 0.0) delta = 0.5 * (y[i - 1] - y[i + 1]) / den;
  delta = std::clamp(delta, -0.5, 0.5);
  a.time = (static_cast<double>(i) + delta) * dt;
  a.amplitude = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * delta;
  return a;
}

}  // namespace

ArrivalSet pick_arrivals(const Envelope& env, double threshold, double min_separation) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("pick_arrivals: threshold must be in (0, 1)");
  }
  const Eigen::Index n = env.magnitude.size();
  ArrivalSet set;
  if (n < 3) return set;
  const double peak = env.magnitude.maxCoeff();
  if (peak <= 0.0) return set;
  const double floor_level = threshold * peak;

  std::vector<Eigen::Index> candidates;
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    if (env.magnitude[i] >= floor_level && env.magnitude[i] >= env.magnitude[i - 1] &&
        env.magnitude[i] > env.magnitude[i + 1]) {
      candidates.push_back(i);
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](Eigen::Index a, Eigen::Index b) {
    return env.magnitude[a] > env.magnitude[b];
  });
  std::vector<Arrival> accepted;
  for (const Eigen::Index i : candidates) {
    const Arrival a = interpolate_peak(env.magnitude, i, env.dt);
    const bool clear = std::all_of(accepted.begin(), accepted.end(), [&](const Arrival& b) {
      return std::abs(a.time - b.time) >= min_separation;
    });
    if (clear) accepted.push_back(a);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Arrival& a, const Arrival& b) { return a.time < b.time; });
  set.arrivals = std::move(accepted);
  return set;
}

double group_velocity(const ArrivalSet& arrivals, const std::vector<double>& path_lengths) {
  const std::size_t n = arrivals.arrivals.size();
  if (n < 2) throw std::invalid_argument("group_velocity: need at least two arrivals");
  if (path_lengths.size() != n) {
    throw std::invalid_argument("group_velocity: one path length per arrival required");
  }
  double mean_t = 0.0;
  double mean_p = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_t += arrivals.arrivals[i].time;
    mean_p += path_lengths[i];
  }
  mean_t /= static_cast<double>(n);
  mean_p /= static_cast<double>(n);
  double cov = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = arrivals.arrivals[i].time - mean_t;
    cov += dt * (path_lengths[i] - mean_p);
    var += dt * dt;
  }
  if (var == 0.0) throw std::invalid_argument("group_velocity: coincident arrival times");
  return cov / var;
}

Snapshot snapshot(const TimeSeriesField& field, const Eigen::VectorXd& positions, double t) {
  if (field.values.rows() != positions.size()) {
    throw std::invalid_argument("snapshot: one position per field row required");
  }
  const double t_max = field.dt * static_cast<double>(field.n_steps() - 1);
  if (!(t >= 0.0 && t <= t_max)) {
    throw std::domain_error("snapshot: requested time outside the simulated window");
  }
  const auto col = static_cast<Eigen::Index>(std::lround(t / field.dt));
  Snapshot snap;
  snap.time = static_cast<double>(col) * field.dt;
  snap.x = positions;
  snap.values = field.values.col(col);
  const double peak = snap.values.cwiseAbs().maxCoeff();
  if (peak > 0.0) snap.values /= peak;
  return snap;
}

Eigen::MatrixXd cwt_spectrum(const ScalarSeries& signal, const std::vector<double>& frequencies,
                             double omega0) {
  if (frequencies.empty()) throw std::invalid_argument("cwt_spectrum: empty frequency list");
  const auto n = static_cast<std::size_t>(signal.samples.size());
  if (n < 8) throw std::invalid_argument("cwt_spectrum: need at least 8 samples");
  const double nyquist = 0.5 / signal.dt;
  for (const double f : frequencies) {
    if (!(f > 0.0 && f < nyquist)) {
      throw std::domain_error("cwt_spectrum: frequency outside (0, Nyquist)");
    }
  }
  std::vector<std::complex<double>> in(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = signal.samples[static_cast<Eigen::Index>(i)];
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec(n);
  fft.fwd(spec, in);

  Eigen::MatrixXd out(static_cast<Eigen::Index>(frequencies.size()),
                      static_cast<Eigen::Index>(n));
  std::vector<std::complex<double>> shaped(n);
  std::vector<std::complex<double>> row(n);
  const double domega = 2.0 * M_PI / (signal.dt * static_cast<double>(n));
  for (std::size_t j = 0; j < frequencies.size(); ++j) {
    const double a = omega0 / (2.0 * M_PI * frequencies[j]);  // scale with ridge at f_j
    // Analytic Morlet response; positive frequencies doubled for a unit tone ridge.
    for (std::size_t k = 0; k < n; ++k) shaped[k] = 0.0;
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k <= half; ++k) {
      const double arg = a * domega * static_cast<double>(k) - omega0;
      shaped[k] = spec[k] * (2.0 * std::exp(-0.5 * arg * arg));
    }
    fft.inv(row, shaped);
    for (std::size_t i = 0; i < n; ++i) {
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::abs(row[i]);
    }
  }
  return out;
}

CrackMetrics crack_metrics(const ScalarSeries& far_end, double burst_duration,
                           double source_receiver_distance, double crack_position,
                           double detection_threshold, double pick_threshold) {
  if (!(burst_duration > 0.0)) {
    throw std::invalid_argument("crack_metrics: burst duration must be positive");
  }
  if (!(source_receiver_distance > 0.0)) {
    throw std::invalid_argument("crack_metrics: distance must be positive");
  }
  const double L = source_receiver_distance;
  CrackMetrics metrics;
  const Envelope env = envelope(far_end);
  const ArrivalSet picked = pick_arrivals(env, pick_threshold, burst_duration);
  if (picked.arrivals.empty()) return metrics;

  const Arrival& direct = picked.arrivals.front();
  metrics.direct_amplitude = direct.amplitude;
  metrics.direct_time = direct.time;
  const double t0 = 0.5 * burst_duration;  // envelope center of the excitation
  if (!(direct.time > t0)) return metrics;
  metrics.measured_speed = L / (direct.time - t0);

  // Direct family: end-to-end bounces with paths L + 2nL.
  const auto in_direct_family = [&](double t) {
    for (int bounce = 0;; ++bounce) {
      const double tau = (L + 2.0 * bounce * L) / metrics.measured_speed;
      if (std::abs((t - t0) - tau) <= 0.15 * tau) return true;
      if (t0 + 0.85 * tau > t) return false;  // gates are ordered; past the candidate
    }
  };
  for (const Arrival& a : picked.arrivals) {
    if (!in_direct_family(a.time)) ++metrics.flaw_arrival_count;
  }

  if (crack_position < 0.0) return metrics;  // uncracked reference
  if (!(crack_position > 0.0 && crack_position < L)) {
    throw std::invalid_argument("crack_metrics: crack position outside (0, L)");
  }

  // First crack-involved path: transmit-reflect at the near end, or reflect straight
  // back off the crack via the source end, whichever is shorter.
  const double extra = 2.0 * std::min(crack_position, L - crack_position);
  const double tau_flaw = (L + extra) / metrics.measured_speed;
  const double gate_lo = t0 + 0.85 * tau_flaw;
  const double gate_hi = t0 + 1.15 * tau_flaw;

  const auto lo = static_cast<Eigen::Index>(std::max(0.0, std::floor(gate_lo / env.dt)));
  const auto hi = std::min<Eigen::Index>(env.magnitude.size() - 1,
                                         static_cast<Eigen::Index>(std::ceil(gate_hi / env.dt)));
  Arrival best;
  bool found = false;
  for (Eigen::Index i = std::max<Eigen::Index>(lo, 1); i <= hi && i + 1 < env.magnitude.size();
       ++i) {
    if (env.magnitude[i] >= env.magnitude[i - 1] && env.magnitude[i] > env.magnitude[i + 1]) {
      const Arrival a = interpolate_peak(env.magnitude, i, env.dt);
      if (!found || a.amplitude > best.amplitude) {
        best = a;
        found = true;
      }
    }
  }
  if (found && best.amplitude >= detection_threshold * metrics.direct_amplitude) {
    metrics.flaw_amplitude = best.amplitude;
    metrics.flaw_arrival = best.time;
    metrics.below_detection = false;
  }
  return metrics;
}

}  // namespace wavesim
