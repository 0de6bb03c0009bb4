#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polsim/collapse.hpp"
#include "polsim/hamiltonian.hpp"
#include "polsim/master.hpp"
#include "polsim/rng.hpp"

namespace polsim {

struct Emission {
  double time = 0.0;
  int channel = 0;  // index into the collapse-channel list
};

struct EmissionRecord {
  std::vector<Emission> events;
};

struct McwfOptions {
  double dt = 0.5e-9;          // s, RK4 step for the non-Hermitian evolution
  double jump_time_tol = 1e-12;  // s, bisection window for the jump time
  double norm_floor = 1e-300;    // squared-norm underflow guard
};

struct McwfResult {
  Vector state;  // normalized state at the final grid time
  EmissionRecord record;
};

// One quantum-jump trajectory: deterministic evolution under
// H_eff = H - (i/2) sum C^dag C, a jump when the squared norm crosses a
// pre-drawn uniform threshold (time refined by bisection), the channel
// drawn proportional to ||C_k psi||^2. A fixed seed reproduces the record
// exactly.
class QuantumJumpIntegrator {
 public:
  QuantumJumpIntegrator(const TimeDependentHamiltonian& h,
                        const std::vector<CollapseChannel>& channels,
                        const McwfOptions& opts = {});

  // `observe`, when set, receives (grid index, normalized state) at every
  // grid point including the initial one.
  McwfResult run(const Vector& psi0, std::span<const double> t_grid, Rng& rng,
                 const std::function<void(int, const Vector&)>& observe = nullptr) const;

  const std::vector<CollapseChannel>& channels() const { return channels_; }

 private:
  void rk4_step(Vector& psi, double t, double dt) const;
  void rhs(double t, const Vector& x, Vector& out) const;

  const TimeDependentHamiltonian& h_;
  std::vector<CollapseChannel> channels_;
  SparseOp rate_sum_;
  McwfOptions opts_;
  mutable Vector k1_, k2_, k3_, k4_, stage_, saved_, candidate_;
};

McwfResult mcwf_run(const Vector& psi0, const TimeDependentHamiltonian& h,
                    const std::vector<CollapseChannel>& channels,
                    std::span<const double> t_grid, std::uint64_t seed,
                    const McwfOptions& opts = {},
                    const std::function<void(int, const Vector&)>& observe = nullptr);

// Trajectory-averaged observables with standard errors, plus (optionally)
// the per-trajectory emission records concatenated in trajectory order.
// Results are bitwise independent of the worker count.
struct EnsembleOptions {
  int n_trajectories = 1000;
  std::uint64_t seed = 1;
  int n_threads = 0;  // 0 = hardware concurrency
  bool keep_records = false;
  McwfOptions mcwf;
};

struct EnsembleStats {
  std::vector<double> times;
  Eigen::MatrixXd mean;       // one row per observable
  Eigen::MatrixXd std_error;  // same layout
  std::vector<EmissionRecord> records;  // empty unless keep_records
};

using InitialStateFn = std::function<Vector(Rng&)>;

EnsembleStats mcwf_ensemble(const InitialStateFn& initial_state,
                            const TimeDependentHamiltonian& h,
                            const std::vector<CollapseChannel>& channels,
                            std::span<const double> t_grid,
                            const std::vector<SparseOp>& observables,
                            const EnsembleOptions& opts);

}  // namespace polsim
