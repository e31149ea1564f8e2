#ifndef WAVESIM_NUMERICS_HPP
#define WAVESIM_NUMERICS_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <vector>

namespace wavesim {

/// Gauss-Legendre abscissae and weights mapped to [0, 1].
struct GaussRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;
};

/// n-point Gauss-Legendre rule on the unit interval (exact for degree <= 2n-1).
GaussRule gauss_legendre_unit(int n);

/// Adaptive Simpson quadrature of f over [a, b] to the given relative tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol);

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

/// Linear interpolation of a uniformly sampled series at time t; zero outside [0, (n-1)*dt].
double interp_linear(const std::vector<double>& samples, double dt, double t);
double interp_linear(const Eigen::VectorXd& samples, double dt, double t);

/// Runs fn(i) for i in [0, n) on up to n_threads workers (0 = hardware concurrency).
/// Work items must write to disjoint state; the partition is deterministic.
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& fn);

/// Thread count resolution: explicit value if > 0, else WAVESIM_THREADS, else hardware.
int resolve_thread_count(int requested);

}  // namespace wavesim

#endif  // WAVESIM_NUMERICS_HPP
