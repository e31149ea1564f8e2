#include "wavesim/newmark_engine.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wavesim/errors.hpp"
#include "wavesim/numerics.hpp"

namespace wavesim {

TimeSeriesField newmark_solve(const Eigen::SparseMatrix<double>& M,
                              const Eigen::SparseMatrix<double>& K,
                              const Eigen::VectorXd& load_pattern,
                              const std::vector<double>& signal, const NewmarkParams& params) {
  if (!(params.dt > 0.0)) throw std::domain_error("newmark_solve: dt must be positive");
  if (params.steps < 1) throw std::domain_error("newmark_solve: need at least one step");
  if (!(params.beta > 0.0) || !(params.gamma >= 0.5) || params.beta < 0.5 * params.gamma) {
    throw std::domain_error("newmark_solve: parameters outside the unconditionally stable set");
  }
  const Eigen::Index n = M.rows();
  if (K.rows() != n || load_pattern.size() != n) {
    throw std::domain_error("newmark_solve: dimension mismatch");
  }

  const double dt = params.dt;
  const double a0 = 1.0 / (params.beta * dt * dt);
  const double a1 = 1.0 / (params.beta * dt);
  const double a2 = 1.0 / (2.0 * params.beta) - 1.0;

  Eigen::SparseMatrix<double> K_eff = K + a0 * M;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> eff;
  eff.compute(K_eff);
  if (eff.info() != Eigen::Success) {
    throw NumericalError("newmark_solve: effective matrix factorization failed");
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> mass;
  mass.compute(M);
  if (mass.info() != Eigen::Success) {
    throw NumericalError("newmark_solve: mass matrix factorization failed");
  }

  const auto force_at = [&](std::size_t step) {
    return step < signal.size() ? signal[step] : 0.0;
  };

  TimeSeriesField out;
  out.dt = dt;
  out.values.resize(n, static_cast<Eigen::Index>(params.steps));

  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd a = mass.solve(load_pattern * force_at(0));  // K u0 = 0 from rest
  out.values.col(0) = u;

  for (std::size_t step = 1; step < params.steps; ++step) {
    const Eigen::VectorXd rhs =
        load_pattern * force_at(step) + M * (a0 * u + a1 * v + a2 * a);
    const Eigen::VectorXd u_next = eff.solve(rhs);
    const Eigen::VectorXd a_next = a0 * (u_next - u) - a1 * v - a2 * a;
    v += dt * ((1.0 - params.gamma) * a + params.gamma * a_next);
    u = u_next;
    a = a_next;
    out.values.col(static_cast<Eigen::Index>(step)) = u;
  }
  return out;
}

TimeSeriesField newmark_solve(const GlobalSystem& system, const Eigen::VectorXd& load_pattern,
                              const std::vector<double>& signal, const NewmarkParams& params) {
  return newmark_solve(system.M, system.K, load_pattern, signal, params);
}

std::vector<double> measure_convergence(const std::vector<ScalarSeries>& series) {
  if (series.size() < 2) {
    throw std::invalid_argument("measure_convergence: need at least two series");
  }
  double shared = std::numeric_limits<double>::infinity();
  for (const ScalarSeries& s : series) {
    if (s.samples.size() < 2 || !(s.dt > 0.0)) {
      throw std::invalid_argument("measure_convergence: series too short");
    }
    shared = std::min(shared, s.dt * static_cast<double>(s.samples.size() - 1));
  }
  const ScalarSeries& ref = series.back();
  const auto n = static_cast<std::size_t>(shared / ref.dt) + 1;

  Eigen::VectorXd u_ref(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    u_ref[static_cast<Eigen::Index>(i)] = interp_linear(ref.samples, ref.dt,
                                                        static_cast<double>(i) * ref.dt);
  }
  const double ref_norm = u_ref.norm();
  if (ref_norm == 0.0) {
    throw std::invalid_argument("measure_convergence: reference series is identically zero");
  }

  std::vector<double> deviations;
  deviations.reserve(series.size());
  for (const ScalarSeries& s : series) {
    Eigen::VectorXd u(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      u[static_cast<Eigen::Index>(i)] =
          interp_linear(s.samples, s.dt, static_cast<double>(i) * ref.dt);
    }
    deviations.push_back((u - u_ref).norm() / ref_norm);
  }
  return deviations;
}

}  // namespace wavesim
