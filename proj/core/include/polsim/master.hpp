#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "polsim/collapse.hpp"
#include "polsim/hamiltonian.hpp"

namespace polsim {

struct DensityState {
  Matrix rho;
  double time = 0.0;

  double trace_real() const { return rho.trace().real(); }
  double hermiticity_defect() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
};

struct IntegratorOptions {
  double dt = 0.25e-9;        // s, target RK4 step
  double dt_min = 1e-13;      // s, floor before giving up
  double trace_tol = 1e-8;    // allowed trace drift per integration
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
  double time;
};

// Fixed-order RK4 propagation of d rho/dt = -i[H(t), rho]
//                                          + sum_k C rho C^dag - 1/2 {C^dag C, rho}.
// The step is halved (down to dt_min) whenever the trace drifts beyond
// trace_tol between grid points. Works for non-Hermitian inputs too, which
// is what the two-time correlation propagation relies on.
class MasterEquation {
 public:
  MasterEquation(const TimeDependentHamiltonian& h, const std::vector<CollapseChannel>& channels);

  // rho(t_grid[i]) for all i; rho0.time must equal t_grid.front().
  std::vector<DensityState> evolve(const DensityState& rho0, std::span<const double> t_grid,
                                   const IntegratorOptions& opts = {}) const;

  // Streaming variant: invokes `observe(i, state)` at each grid point
  // (including i = 0) without storing the full history.
  void evolve(const DensityState& rho0, std::span<const double> t_grid,
              const IntegratorOptions& opts,
              const std::function<void(int, const DensityState&)>& observe) const;

  // Propagates an arbitrary (generally non-Hermitian) matrix under the same
  // generator from t0 to t1 with fixed step <= dt. Used by the quantum
  // regression theorem.
  void propagate(Matrix& m, double t0, double t1, double dt) const;

  void rhs(double t, const Matrix& m, Matrix& out) const;

  const TimeDependentHamiltonian& hamiltonian() const { return h_; }
  const std::vector<CollapseChannel>& channels() const { return channels_; }

 private:
  void step(Matrix& m, double t, double dt) const;

  const TimeDependentHamiltonian& h_;
  std::vector<CollapseChannel> channels_;
  std::vector<SparseOp> c_adjoints_;
  SparseOp rate_sum_;  // sum C^dag C
  // Scratch buffers; a MasterEquation instance is not safe to share across
  // threads, construct one per worker.
  mutable Matrix k1_, k2_, k3_, k4_, tmp_, tmp2_, stage_;
};

std::vector<DensityState> evolve_master(const DensityState& rho0,
                                        const TimeDependentHamiltonian& h,
                                        const std::vector<CollapseChannel>& channels,
                                        std::span<const double> t_grid,
                                        const IntegratorOptions& opts = {});

// Uniform grid helper: n+1 points from t0 to t1 inclusive.
std::vector<double> linspace(double t0, double t1, int n_intervals);

}  // namespace polsim
