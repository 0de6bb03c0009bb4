#pragma once

#include <functional>

#include "polsim/cavity.hpp"
#include "polsim/level_scheme.hpp"
#include "polsim/operators.hpp"
#include "polsim/pulse.hpp"

namespace polsim {

// Precomputed pieces of the rotating-frame Hamiltonian
//   H(t) = h0 + s(t) h_cav
//        + (Omega(t)/2) [ e^{-i delta_pc t} (w+ v_plus + w- v_minus) + h.c. ]
// with h0 the diagonal level energies, h_cav the cavity coupling at g_max,
// and v_q the pump raising parts |x><g| per circular component.
struct HamiltonianTerms {
  Vector h0_diag;
  SparseOp h_cav;
  SparseOp v_plus, v_plus_dag;
  SparseOp v_minus, v_minus_dag;
};

HamiltonianTerms build_hamiltonian_terms(const CompositeSpace& space,
                                         const LevelScheme& scheme,
                                         const CavityConfig& cavity);

// Time-dependent Hamiltonian with pluggable drive schedule and coupling
// scale (atom transit). Pure and safe to share across threads.
class TimeDependentHamiltonian {
 public:
  using DriveFn = std::function<DriveSample(double)>;
  using ScaleFn = std::function<double(double)>;

  TimeDependentHamiltonian(HamiltonianTerms terms, DriveFn drive = nullptr,
                           ScaleFn coupling_scale = nullptr);

  // out = H(t) x. `out` must be sized like x.
  void apply(double t, const Vector& x, Vector& out) const;

  // out = H(t) m, right = m H(t). Both accept non-Hermitian m.
  void apply_left(double t, const Matrix& m, Matrix& out) const;
  void apply_right(double t, const Matrix& m, Matrix& out) const;

  SparseOp matrix(double t) const;

  int dimension() const { return static_cast<int>(terms_.h0_diag.size()); }

 private:
  struct Coefficients {
    double scale;
    Complex f_plus, f_minus;
  };
  Coefficients coefficients(double t) const;

  HamiltonianTerms terms_;
  DriveFn drive_;
  ScaleFn coupling_scale_;
};

// Single-pulse Hamiltonian on [0, t_p] with full coupling, as used by the
// wavepacket computations and the construction-level tests.
TimeDependentHamiltonian make_pulse_hamiltonian(const CompositeSpace& space,
                                                const LevelScheme& scheme,
                                                const CavityConfig& cavity,
                                                const PumpPulse& pulse);

// Program-driven Hamiltonian; `coupling_scale` may modulate g (atom transit),
// with t measured on the same absolute axis as the program.
TimeDependentHamiltonian make_program_hamiltonian(const CompositeSpace& space,
                                                  const LevelScheme& scheme,
                                                  const CavityConfig& cavity,
                                                  const PulseProgram& program,
                                                  TimeDependentHamiltonian::ScaleFn coupling_scale = nullptr);

// H(t) as an explicit sparse matrix for one pulse at time t in [0, t_p].
SparseOp build_hamiltonian(const CompositeSpace& space, const LevelScheme& scheme,
                           const CavityConfig& cavity, const PumpPulse& pulse, double t);

}  // namespace polsim
