#ifndef WAVESIM_NEWMARK_ENGINE_HPP
#define WAVESIM_NEWMARK_ENGINE_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <vector>

#include "wavesim/mesh_assembly.hpp"
#include "wavesim/signal.hpp"

namespace wavesim {

struct NewmarkParams {
  double beta = 0.25;   // average acceleration
  double gamma = 0.5;
  double dt = 0.0;
  std::size_t steps = 0;  // output samples, t_n = n*dt for n = 0..steps-1
};

/// Implicit Newmark recursion from rest; forcing is load_pattern * signal(t_n), with
/// the signal zero-extended past its last sample. The effective matrix is factored
/// once. Rows of the result are DOFs.
TimeSeriesField newmark_solve(const Eigen::SparseMatrix<double>& M,
                              const Eigen::SparseMatrix<double>& K,
                              const Eigen::VectorXd& load_pattern,
                              const std::vector<double>& signal, const NewmarkParams& params);

TimeSeriesField newmark_solve(const GlobalSystem& system, const Eigen::VectorXd& load_pattern,
                              const std::vector<double>& signal, const NewmarkParams& params);

/// Relative L2 deviation of each series from the last (finest) one, after linear
/// resampling onto the reference time axis over the shared duration. The final entry
/// is zero by construction.
std::vector<double> measure_convergence(const std::vector<ScalarSeries>& series);

}  // namespace wavesim

#endif  // WAVESIM_NEWMARK_ENGINE_HPP
