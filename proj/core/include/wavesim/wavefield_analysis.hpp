#ifndef WAVESIM_WAVEFIELD_ANALYSIS_HPP
#define WAVESIM_WAVEFIELD_ANALYSIS_HPP

#include <Eigen/Dense>

#include <vector>

#include "wavesim/signal.hpp"

namespace wavesim {

struct Envelope {
  double dt = 0.0;
  Eigen::VectorXd magnitude;
};

/// Analytic-signal modulus via the discrete Fourier method. Needs >= 8 samples.
Envelope envelope(const ScalarSeries& signal);

struct Arrival {
  double time = 0.0;       // parabolic-interpolated peak location [s]
  double amplitude = 0.0;  // interpolated peak height
};

struct ArrivalSet {
  std::vector<Arrival> arrivals;  // strictly increasing times
};

/// Local envelope maxima above threshold * global max, thinned greedily by amplitude
/// so surviving peaks are at least min_separation apart.
ArrivalSet pick_arrivals(const Envelope& env, double threshold = 0.05,
                         double min_separation = 0.0);

/// Least-squares slope of path length against arrival time; needs >= 2 arrivals with
/// one path length per arrival.
double group_velocity(const ArrivalSet& arrivals, const std::vector<double>& path_lengths);

struct Snapshot {
  double time = 0.0;  // nearest-sample time actually used
  Eigen::VectorXd x;
  Eigen::VectorXd values;  // normalized to max |value| = 1 (zero field stays zero)
};

/// Field rows must correspond one-to-one with the positions vector.
Snapshot snapshot(const TimeSeriesField& field, const Eigen::VectorXd& positions, double t);

/// Complex Morlet scalogram magnitude (rows = frequencies, columns = time samples).
/// The wavelet response is flat across tones: a unit sinusoid at a listed frequency
/// produces a ridge of magnitude ~1 at that row.
Eigen::MatrixXd cwt_spectrum(const ScalarSeries& signal, const std::vector<double>& frequencies,
                             double omega0 = 6.0);

struct CrackMetrics {
  double direct_amplitude = 0.0;
  double direct_time = 0.0;       // arrival of the first packet [s]
  double measured_speed = 0.0;    // source-receiver distance over transit time
  double flaw_amplitude = 0.0;    // 0 when below detection
  double flaw_arrival = 0.0;      // time of the gated flaw packet, 0 if none
  bool below_detection = true;
  int flaw_arrival_count = 0;     // picked arrivals outside every direct-path gate
};

/// Reads direct and crack-scattered packets from the far-end history. The flaw gate
/// is +-15% of the predicted first crack-path transit (path L + 2*min(x_c, L - x_c))
/// using the speed measured from the direct packet; crack_position < 0 means no crack
/// (gate skipped). Arrivals outside every direct-family gate (paths L + 2nL) count as
/// flaw arrivals.
CrackMetrics crack_metrics(const ScalarSeries& far_end, double burst_duration,
                           double source_receiver_distance, double crack_position,
                           double detection_threshold = 0.02, double pick_threshold = 0.05);

}  // namespace wavesim

#endif  // WAVESIM_WAVEFIELD_ANALYSIS_HPP
