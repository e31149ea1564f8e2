#ifndef WAVESIM_LAPLACE_ENGINE_HPP
#define WAVESIM_LAPLACE_ENGINE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <vector>

#include "wavesim/mesh_assembly.hpp"
#include "wavesim/signal.hpp"

namespace wavesim {

/// Complex frequency ladder s_k = sigma + i * 2*pi*k/(N*dt) of the damped transform.
struct LaplaceGrid {
  std::size_t N = 0;  // power of two
  double dt = 0.0;
  double sigma = 0.0;

  double window() const { return static_cast<double>(N) * dt; }
  double omega(std::size_t k) const;
  std::complex<double> s(std::size_t k) const { return {sigma, omega(k)}; }

  /// Window of at least window_factor * duration rounded up to a power-of-two sample
  /// count; sigma damps wraparound to wrap_suppression at the window end.
  static LaplaceGrid plan(double dt, double duration, double window_factor = 2.0,
                          double wrap_suppression = 1e-3);
};

/// F(s_k) = dt * DFT of f(t_n) * exp(-sigma t_n), zero-padded to N.
Eigen::VectorXcd forward_transform(const std::vector<double>& samples, const LaplaceGrid& grid);
Eigen::VectorXcd forward_transform(const Eigen::VectorXd& samples, const LaplaceGrid& grid);

/// Damped inverse of half spectra (columns k = 0..N/2): Hermitian extension, inverse
/// DFT scaled by 1/(N*dt), then the exp(sigma t_n) lift. Rows of the input are DOFs.
TimeSeriesField inverse_transform(const Eigen::MatrixXcd& half_spectra, const LaplaceGrid& grid,
                                  int n_threads = 1);
ScalarSeries inverse_transform_series(const Eigen::VectorXcd& half_spectrum,
                                      const LaplaceGrid& grid);

/// Frequency-domain solver with per-element elimination of wavelet-interior DOFs.
/// Elements sharing a template are condensed once per frequency.
class CondensedSolver {
 public:
  explicit CondensedSolver(const GlobalSystem& system);

  int n_boundary() const { return static_cast<int>(system_.boundary_set.size()); }

  /// Dense condensed matrix over boundary DOFs at s (boundary-slot numbering).
  Eigen::MatrixXcd condensed_matrix(std::complex<double> s) const;

  /// Boundary solution of K̄(s) u_b = load restricted to boundary slots.
  Eigen::VectorXcd solve_boundary(std::complex<double> s, const Eigen::VectorXd& load_pattern,
                                  std::complex<double> scale) const;

  /// Interior recovery u_i = -A_ii^{-1} A_ib u_b per element; returns the full
  /// reduced-DOF vector with boundary values copied in.
  Eigen::VectorXcd recover_interior(std::complex<double> s,
                                    const Eigen::VectorXcd& u_boundary) const;

  /// solve_boundary followed by recover_interior.
  Eigen::VectorXcd solve(std::complex<double> s, const Eigen::VectorXd& load_pattern,
                         std::complex<double> scale) const;

  const GlobalSystem& system() const { return system_; }

 private:
  struct TemplateBlocks {
    Eigen::MatrixXd K_ii, K_ib, K_bi, K_bb;
    Eigen::MatrixXd M_ii, M_ib, M_bi, M_bb;
    bool has_interior = false;
  };
  struct TemplateFactor {
    Eigen::MatrixXcd S;  // condensed boundary block
    Eigen::MatrixXcd G;  // A_ii^{-1} A_ib
  };
  std::vector<TemplateFactor> factorize(std::complex<double> s) const;
  Eigen::MatrixXcd assemble_condensed(const std::vector<TemplateFactor>& factors) const;
  Eigen::VectorXcd solve_condensed(const Eigen::MatrixXcd& Kbar, std::complex<double> s,
                                   const Eigen::VectorXd& load_pattern,
                                   std::complex<double> scale) const;
  Eigen::VectorXcd recover_from(const std::vector<TemplateFactor>& factors,
                                const Eigen::VectorXcd& u_boundary) const;

  const GlobalSystem& system_;
  std::vector<TemplateBlocks> blocks_;
  std::vector<std::vector<int>> template_boundary_slots_;
  std::vector<std::vector<int>> template_interior_slots_;
};

/// Uncondensed complex solve (s^2 M + K) u = pattern * scale, for small systems and
/// as the exactness oracle.
Eigen::VectorXcd solve_full(const GlobalSystem& system, std::complex<double> s,
                            const Eigen::VectorXd& load_pattern, std::complex<double> scale);

/// Full pipeline: forward transform, condensed solves over k = 0..N/2 (parallel over
/// frequencies, deterministic for any thread count), interior recovery, inverse
/// transform. Rows of the result are reduced DOFs, N samples.
TimeSeriesField run_lwfem(const GlobalSystem& system, const Eigen::VectorXd& load_pattern,
                          const SampledSignal& excitation, const LaplaceGrid& grid,
                          int n_threads = 1);

/// Same pipeline on explicit dense matrices (no condensation); oracle path.
TimeSeriesField run_laplace_dense(const Eigen::MatrixXd& M, const Eigen::MatrixXd& K,
                                  const Eigen::VectorXd& load_pattern,
                                  const SampledSignal& excitation, const LaplaceGrid& grid,
                                  int n_threads = 1);

}  // namespace wavesim

#endif  // WAVESIM_LAPLACE_ENGINE_HPP
