#include "wavesim/laplace_engine.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <random>
#include <sstream>

#include "wavesim/errors.hpp"
#include "wavesim/numerics.hpp"

namespace wavesim {

double LaplaceGrid::omega(std::size_t k) const {
  return 2.0 * M_PI * static_cast<double>(k) / (static_cast<double>(N) * dt);
}

LaplaceGrid LaplaceGrid::plan(double dt, double duration, double window_factor,
                              double wrap_suppression) {
  if (!(dt > 0.0)) throw std::domain_error("LaplaceGrid::plan: dt must be positive");
  if (!(duration > 0.0)) throw std::domain_error("LaplaceGrid::plan: duration must be positive");
  if (!(window_factor >= 1.0)) {
    throw std::domain_error("LaplaceGrid::plan: window factor below 1 truncates the run");
  }
  if (!(wrap_suppression > 0.0 && wrap_suppression < 1.0)) {
    throw std::domain_error("LaplaceGrid::plan: wrap suppression must be in (0, 1)");
  }
  LaplaceGrid grid;
  grid.dt = dt;
  const auto wanted = static_cast<std::size_t>(std::ceil(window_factor * duration / dt));
  grid.N = std::max<std::size_t>(2, next_pow2(wanted));
  grid.sigma = std::log(1.0 / wrap_suppression) / grid.window();
  return grid;
}

namespace {

Eigen::VectorXcd forward_impl(const double* data, std::size_t len, const LaplaceGrid& grid) {
  if (len > grid.N) {
    std::ostringstream msg;
    msg << "forward_transform: signal has " << len << " samples but the grid holds only "
        << grid.N << "; plan a larger window";
    throw NumericalError(msg.str());
  }
  std::vector<std::complex<double>> damped(grid.N, 0.0);
  for (std::size_t n = 0; n < len; ++n) {
    damped[n] = data[n] * std::exp(-grid.sigma * grid.dt * static_cast<double>(n));
  }
  std::vector<std::complex<double>> spectrum(grid.N);
  Eigen::FFT<double> fft;
  fft.fwd(spectrum, damped);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(grid.N));
  for (std::size_t k = 0; k < grid.N; ++k) out[static_cast<Eigen::Index>(k)] = grid.dt * spectrum[k];
  return out;
}

}  // namespace

Eigen::VectorXcd forward_transform(const std::vector<double>& samples, const LaplaceGrid& grid) {
  return forward_impl(samples.data(), samples.size(), grid);
}

Eigen::VectorXcd forward_transform(const Eigen::VectorXd& samples, const LaplaceGrid& grid) {
  return forward_impl(samples.data(), static_cast<std::size_t>(samples.size()), grid);
}

namespace {

// One row: Hermitian extension of the half spectrum, inverse DFT, damping lift.
void invert_row(const Eigen::VectorXcd& half, const LaplaceGrid& grid, Eigen::FFT<double>& fft,
                double* out) {
  const std::size_t N = grid.N;
  const std::size_t half_n = N / 2;
  std::vector<std::complex<double>> full(N);
  full[0] = half[0].real();
  full[half_n] = half[static_cast<Eigen::Index>(half_n)].real();
  for (std::size_t k = 1; k < half_n; ++k) {
    full[k] = half[static_cast<Eigen::Index>(k)];
    full[N - k] = std::conj(half[static_cast<Eigen::Index>(k)]);
  }
  std::vector<std::complex<double>> time(N);
  fft.inv(time, full);  // includes the 1/N factor
  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    max_re = std::max(max_re, std::abs(time[n].real()));
    max_im = std::max(max_im, std::abs(time[n].imag()));
  }
  if (max_im > 1e-9 * std::max(max_re, 1e-300)) {
    throw NumericalError("inverse_transform: non-real inverse of a Hermitian spectrum");
  }
  for (std::size_t n = 0; n < N; ++n) {
    out[n] = time[n].real() / grid.dt * std::exp(grid.sigma * grid.dt * static_cast<double>(n));
  }
}

}  // namespace

TimeSeriesField inverse_transform(const Eigen::MatrixXcd& half_spectra, const LaplaceGrid& grid,
                                  int n_threads) {
  if (static_cast<std::size_t>(half_spectra.cols()) != grid.N / 2 + 1) {
    throw NumericalError("inverse_transform: expected N/2+1 spectral columns");
  }
  TimeSeriesField field;
  field.dt = grid.dt;
  field.values.resize(half_spectra.rows(), static_cast<Eigen::Index>(grid.N));
  parallel_for(static_cast<std::size_t>(half_spectra.rows()), n_threads, [&](std::size_t r) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd row = half_spectra.row(static_cast<Eigen::Index>(r)).transpose();
    std::vector<double> buffer(grid.N);
    invert_row(row, grid, fft, buffer.data());
    for (std::size_t n = 0; n < grid.N; ++n) {
      field.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(n)) = buffer[n];
    }
  });
  return field;
}

ScalarSeries inverse_transform_series(const Eigen::VectorXcd& half_spectrum,
                                      const LaplaceGrid& grid) {
  Eigen::MatrixXcd one(1, half_spectrum.size());
  one.row(0) = half_spectrum.transpose();
  const TimeSeriesField field = inverse_transform(one, grid, 1);
  return ScalarSeries{field.dt, field.values.row(0).transpose()};
}

CondensedSolver::CondensedSolver(const GlobalSystem& system) : system_(system) {
  const std::size_t n_templates = system.templates.size();
  blocks_.resize(n_templates);
  template_boundary_slots_.resize(n_templates);
  template_interior_slots_.resize(n_templates);
  std::vector<bool> seen(n_templates, false);
  for (const ElementDofs& ed : system.element_dofs) {
    const auto t = static_cast<std::size_t>(ed.template_id);
    if (seen[t]) continue;
    seen[t] = true;
    template_boundary_slots_[t] = ed.boundary_slots;
    template_interior_slots_[t] = ed.interior_slots;
    const ElementMatrices& em = system.templates[t];
    const auto& bs = ed.boundary_slots;
    const auto& is = ed.interior_slots;
    TemplateBlocks& blk = blocks_[t];
    blk.has_interior = !is.empty();
    const auto gather = [](const Eigen::MatrixXd& A, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
      Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(cols.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
          out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
              A(rows[i], cols[j]);
        }
      }
      return out;
    };
    blk.K_bb = gather(em.K, bs, bs);
    blk.M_bb = gather(em.M, bs, bs);
    if (blk.has_interior) {
      blk.K_ii = gather(em.K, is, is);
      blk.K_ib = gather(em.K, is, bs);
      blk.K_bi = gather(em.K, bs, is);
      blk.M_ii = gather(em.M, is, is);
      blk.M_ib = gather(em.M, is, bs);
      blk.M_bi = gather(em.M, bs, is);
    }
  }
}

std::vector<CondensedSolver::TemplateFactor> CondensedSolver::factorize(
    std::complex<double> s) const {
  const std::complex<double> s2 = s * s;
  std::vector<TemplateFactor> factors(blocks_.size());
  for (std::size_t t = 0; t < blocks_.size(); ++t) {
    const TemplateBlocks& blk = blocks_[t];
    if (!blk.has_interior) {
      factors[t].S = s2 * blk.M_bb.cast<std::complex<double>>() +
                     blk.K_bb.cast<std::complex<double>>();
      continue;
    }
    const Eigen::MatrixXcd A_ii =
        s2 * blk.M_ii.cast<std::complex<double>>() + blk.K_ii.cast<std::complex<double>>();
    const Eigen::MatrixXcd A_ib =
        s2 * blk.M_ib.cast<std::complex<double>>() + blk.K_ib.cast<std::complex<double>>();
    const Eigen::MatrixXcd A_bi =
        s2 * blk.M_bi.cast<std::complex<double>>() + blk.K_bi.cast<std::complex<double>>();
    const Eigen::MatrixXcd A_bb =
        s2 * blk.M_bb.cast<std::complex<double>>() + blk.K_bb.cast<std::complex<double>>();
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A_ii);
    factors[t].G = lu.solve(A_ib);
    factors[t].S = A_bb - A_bi * factors[t].G;
  }
  return factors;
}

Eigen::MatrixXcd CondensedSolver::assemble_condensed(
    const std::vector<TemplateFactor>& factors) const {
  const int nb = n_boundary();
  Eigen::MatrixXcd Kbar = Eigen::MatrixXcd::Zero(nb, nb);
  for (const ElementDofs& ed : system_.element_dofs) {
    const auto t = static_cast<std::size_t>(ed.template_id);
    const Eigen::MatrixXcd& S = factors[t].S;
    const std::vector<int>& bs = ed.boundary_slots;
    for (std::size_t p = 0; p < bs.size(); ++p) {
      const int gp = ed.dofs[static_cast<std::size_t>(bs[p])];
      if (gp < 0) continue;
      const int bp = system_.boundary_index[static_cast<std::size_t>(gp)];
      for (std::size_t q = 0; q < bs.size(); ++q) {
        const int gq = ed.dofs[static_cast<std::size_t>(bs[q])];
        if (gq < 0) continue;
        const int bq = system_.boundary_index[static_cast<std::size_t>(gq)];
        Kbar(bp, bq) += S(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
      }
    }
  }
  return Kbar;
}

Eigen::VectorXcd CondensedSolver::solve_condensed(const Eigen::MatrixXcd& Kbar,
                                                  std::complex<double> s,
                                                  const Eigen::VectorXd& load_pattern,
                                                  std::complex<double> scale) const {
  const int nb = n_boundary();
  Eigen::VectorXcd rhs(nb);
  for (int b = 0; b < nb; ++b) {
    rhs[b] = scale * load_pattern[system_.boundary_set[static_cast<std::size_t>(b)]];
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Kbar);
  const Eigen::VectorXcd u_b = lu.solve(rhs);
  if (!u_b.allFinite()) {
    std::ostringstream msg;
    msg << "solve_boundary: factorization failed at s = (" << s.real() << ", " << s.imag()
        << ")";
    throw NumericalError(msg.str());
  }
  return u_b;
}

Eigen::VectorXcd CondensedSolver::recover_from(const std::vector<TemplateFactor>& factors,
                                               const Eigen::VectorXcd& u_boundary) const {
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(system_.n_dof);
  for (int b = 0; b < n_boundary(); ++b) {
    u[system_.boundary_set[static_cast<std::size_t>(b)]] = u_boundary[b];
  }
  for (const ElementDofs& ed : system_.element_dofs) {
    if (ed.interior_slots.empty()) continue;
    const auto t = static_cast<std::size_t>(ed.template_id);
    const Eigen::MatrixXcd& G = factors[t].G;
    Eigen::VectorXcd ub(static_cast<Eigen::Index>(ed.boundary_slots.size()));
    for (std::size_t p = 0; p < ed.boundary_slots.size(); ++p) {
      const int gp = ed.dofs[static_cast<std::size_t>(ed.boundary_slots[p])];
      ub[static_cast<Eigen::Index>(p)] = gp >= 0 ? u[gp] : 0.0;
    }
    const Eigen::VectorXcd ui = -G * ub;
    for (std::size_t p = 0; p < ed.interior_slots.size(); ++p) {
      const int gp = ed.dofs[static_cast<std::size_t>(ed.interior_slots[p])];
      if (gp >= 0) u[gp] = ui[static_cast<Eigen::Index>(p)];
    }
  }
  return u;
}

Eigen::MatrixXcd CondensedSolver::condensed_matrix(std::complex<double> s) const {
  return assemble_condensed(factorize(s));
}

Eigen::VectorXcd CondensedSolver::solve_boundary(std::complex<double> s,
                                                 const Eigen::VectorXd& load_pattern,
                                                 std::complex<double> scale) const {
  return solve_condensed(assemble_condensed(factorize(s)), s, load_pattern, scale);
}

Eigen::VectorXcd CondensedSolver::recover_interior(std::complex<double> s,
                                                   const Eigen::VectorXcd& u_boundary) const {
  return recover_from(factorize(s), u_boundary);
}

Eigen::VectorXcd CondensedSolver::solve(std::complex<double> s,
                                        const Eigen::VectorXd& load_pattern,
                                        std::complex<double> scale) const {
  const std::vector<TemplateFactor> factors = factorize(s);
  const Eigen::VectorXcd u_b =
      solve_condensed(assemble_condensed(factors), s, load_pattern, scale);
  return recover_from(factors, u_b);
}

Eigen::VectorXcd solve_full(const GlobalSystem& system, std::complex<double> s,
                            const Eigen::VectorXd& load_pattern, std::complex<double> scale) {
  const Eigen::MatrixXcd A = (s * s) * Eigen::MatrixXd(system.M).cast<std::complex<double>>() +
                             Eigen::MatrixXd(system.K).cast<std::complex<double>>();
  const Eigen::VectorXcd rhs = load_pattern.cast<std::complex<double>>() * scale;
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(A).solve(rhs);
}

namespace {

#ifndef NDEBUG
void spot_check_condensation(const GlobalSystem& system, const CondensedSolver& solver,
                             const LaplaceGrid& grid, const Eigen::VectorXd& pattern,
                             const Eigen::VectorXcd& spectrum) {
  if (system.n_dof > 2000) return;
  std::mt19937 rng(0x5eedu);
  std::uniform_int_distribution<std::size_t> pick(1, grid.N / 2);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t k = pick(rng);
    const std::complex<double> s = grid.s(k);
    const std::complex<double> F = spectrum[static_cast<Eigen::Index>(k)];
    const Eigen::VectorXcd condensed = solver.solve(s, pattern, F);
    const Eigen::VectorXcd full = solve_full(system, s, pattern, F);
    const double rel = (condensed - full).norm() / std::max(full.norm(), 1e-300);
    if (!(rel < 1e-10)) {
      throw NumericalError("run_lwfem: condensation drifted from the full solve");
    }
  }
}
#endif

}  // namespace

TimeSeriesField run_lwfem(const GlobalSystem& system, const Eigen::VectorXd& load_pattern,
                          const SampledSignal& excitation, const LaplaceGrid& grid,
                          int n_threads) {
  if (load_pattern.size() != system.n_dof) {
    throw NumericalError("run_lwfem: load vector size does not match the system");
  }
  const Eigen::VectorXcd spectrum = forward_transform(excitation.samples, grid);
  const CondensedSolver solver(system);
  const std::size_t half = grid.N / 2;
  Eigen::MatrixXcd U(system.n_dof, static_cast<Eigen::Index>(half + 1));
  parallel_for(half + 1, n_threads, [&](std::size_t k) {
    U.col(static_cast<Eigen::Index>(k)) =
        solver.solve(grid.s(k), load_pattern, spectrum[static_cast<Eigen::Index>(k)]);
  });
#ifndef NDEBUG
  spot_check_condensation(system, solver, grid, load_pattern, spectrum);
#endif
  return inverse_transform(U, grid, n_threads);
}

TimeSeriesField run_laplace_dense(const Eigen::MatrixXd& M, const Eigen::MatrixXd& K,
                                  const Eigen::VectorXd& load_pattern,
                                  const SampledSignal& excitation, const LaplaceGrid& grid,
                                  int n_threads) {
  const Eigen::VectorXcd spectrum = forward_transform(excitation.samples, grid);
  const std::size_t half = grid.N / 2;
  Eigen::MatrixXcd U(M.rows(), static_cast<Eigen::Index>(half + 1));
  parallel_for(half + 1, n_threads, [&](std::size_t k) {
    const std::complex<double> s = grid.s(k);
    const Eigen::MatrixXcd A =
        (s * s) * M.cast<std::complex<double>>() + K.cast<std::complex<double>>();
    U.col(static_cast<Eigen::Index>(k)) = Eigen::PartialPivLU<Eigen::MatrixXcd>(A).solve(
        load_pattern.cast<std::complex<double>>() * spectrum[static_cast<Eigen::Index>(k)]);
  });
  return inverse_transform(U, grid, n_threads);
}

}  // namespace wavesim
