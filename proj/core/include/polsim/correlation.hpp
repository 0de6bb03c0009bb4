#pragma once

#include <span>
#include <vector>

#include "polsim/master.hpp"

namespace polsim {

// Two-time first-order coherence G1(t1,t2) = <a^dag(t2) a(t1)> of one output
// channel on a common grid, scaled so the diagonal is the photon flux
// (scale = 2 kappa_out makes integral(diag) the emission probability).
struct CorrelationSurface {
  std::vector<double> times;
  Matrix g;  // g(i,j) = scale * <a^dag(t_j) a(t_i)>

  double grid_step() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
  double hermitian_defect() const { return (g - g.adjoint()).cwiseAbs().maxCoeff(); }
  double min_diagonal() const { return g.diagonal().real().minCoeff(); }

  // integral of the diagonal (flux) over the grid, trapezoidal.
  double emission_probability() const;
};

// Quantum regression: Lambda(t1) = a rho(t1) propagated by the same
// Liouvillian; G1(t1, t2) = tr[a^dag Lambda(t2)] for t2 >= t1.
std::vector<Complex> two_time_correlation(const DensityState& rho_t1,
                                          const TimeDependentHamiltonian& h,
                                          const std::vector<CollapseChannel>& channels,
                                          const SparseOp& channel_op,
                                          std::span<const double> t2_grid, double dt);

// Full surface: one master-equation pass stores rho on the grid, then each
// row is propagated independently (rows are distributed over threads; the
// result does not depend on the worker count). The lower triangle is filled
// by Hermitian symmetry.
CorrelationSurface g1_surface(const TimeDependentHamiltonian& h,
                              const std::vector<CollapseChannel>& channels,
                              const DensityState& rho0, std::span<const double> t_grid,
                              const SparseOp& channel_op, const IntegratorOptions& opts,
                              double scale, int n_threads = 0);

}  // namespace polsim
