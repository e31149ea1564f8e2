#ifndef WAVESIM_SIGNAL_HPP
#define WAVESIM_SIGNAL_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace wavesim {

/// Uniformly sampled excitation trace plus the metadata the solvers need.
struct SampledSignal {
  double dt = 0.0;
  std::vector<double> samples;
  std::vector<double> center_frequencies;  // carrier frequencies present in the burst
  double duration = 0.0;                   // active burst length [s]
  bool undersampled = false;               // true when dt cannot resolve the carrier cleanly
};

/// One scalar DOF history, uniform time step.
struct ScalarSeries {
  double dt = 0.0;
  Eigen::VectorXd samples;
};

/// Histories for many DOFs on a shared time axis; one row per DOF.
struct TimeSeriesField {
  double dt = 0.0;
  Eigen::MatrixXd values;
  std::vector<std::string> labels;  // optional per-row labels (e.g. "u@x=0.75")

  Eigen::Index n_dofs() const { return values.rows(); }
  Eigen::Index n_steps() const { return values.cols(); }

  ScalarSeries row(Eigen::Index i) const {
    return ScalarSeries{dt, values.row(i).transpose()};
  }
};

}  // namespace wavesim

#endif  // WAVESIM_SIGNAL_HPP
