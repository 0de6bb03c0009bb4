#include "polsim/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace polsim {

namespace {
using Triplet = Eigen::Triplet<Complex>;
}

double PumpPulse::envelope(double t_in_pulse) const {
  if (t_in_pulse < 0.0 || t_in_pulse > t_p) return 0.0;
  const double s = std::sin(std::numbers::pi * t_in_pulse / t_p);
  return omega0 * s * s;
}

void PumpPulse::validate() const {
  if (omega0 < 0.0) throw std::invalid_argument("omega0 must be nonnegative");
  if (t_p <= 0.0) throw std::invalid_argument("pulse duration must be positive");
}

PulseProgram PulseProgram::alternating(double omega0, double t_p, double delta_b,
                                       double period, int repetitions) {
  PumpPulse plus;
  plus.omega0 = omega0;
  plus.t_p = t_p;
  plus.delta_pc = +2.0 * delta_b;
  PumpPulse minus = plus;
  minus.delta_pc = -2.0 * delta_b;
  PulseProgram program;
  program.pulses = {plus, minus};
  program.period = period;
  program.repetitions = repetitions;
  program.validate();
  return program;
}

void PulseProgram::validate() const {
  if (pulses.empty()) throw std::invalid_argument("pulse program is empty");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be positive");
  for (const auto& p : pulses) {
    p.validate();
    if (period < p.t_p) throw std::invalid_argument("slot period shorter than pulse");
  }
}

DriveSample sample_program(const PulseProgram& program, double t) {
  DriveSample s;
  if (t < 0.0) return s;
  const int slot = static_cast<int>(t / program.period);
  if (slot >= program.total_pulses()) return s;
  const PumpPulse& pulse = program.pulse(slot);
  const double local = t - program.slot_start(slot);
  s.omega = pulse.envelope(local);
  s.delta_pc = pulse.delta_pc;
  s.w_plus = pulse.w_plus;
  s.w_minus = pulse.w_minus;
  return s;
}

HamiltonianTerms build_hamiltonian_terms(const CompositeSpace& space,
                                         const LevelScheme& scheme,
                                         const CavityConfig& cavity) {
  cavity.validate();
  const int dim = space.dimension();

  HamiltonianTerms terms;
  terms.h0_diag = Vector::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    const BasisState b = space.basis_state(i);
    double e = scheme.level(b.atom).energy;
    if (scheme.level(b.atom).excited) e += cavity.detuning_c;
    terms.h0_diag[i] = e;
  }

  const SparseOp a_plus = annihilator(space, Polarization::SigmaPlus);
  const SparseOp a_minus = annihilator(space, Polarization::SigmaMinus);

  std::vector<Triplet> vp, vm;
  SparseOp h_cav(dim, dim);
  for (const auto& c : scheme.couplings()) {
    const SparseOp lower = atomic_transition(space, c.ground, c.excited);  // |g><x|
    const SparseOp raise = atomic_transition(space, c.excited, c.ground);
    if (c.pol == Polarization::SigmaPlus) {
      SparseOp term = SparseOp(a_plus.adjoint()) * lower;
      h_cav = h_cav + SparseOp(cavity.g_max * c.coeff * (term + SparseOp(term.adjoint())));
      for (int k = 0; k < raise.outerSize(); ++k)
        for (SparseOp::InnerIterator it(raise, k); it; ++it)
          vp.emplace_back(it.row(), it.col(), c.coeff * it.value());
    } else if (c.pol == Polarization::SigmaMinus) {
      SparseOp term = SparseOp(a_minus.adjoint()) * lower;
      h_cav = h_cav + SparseOp(cavity.g_max * c.coeff * (term + SparseOp(term.adjoint())));
      for (int k = 0; k < raise.outerSize(); ++k)
        for (SparseOp::InnerIterator it(raise, k); it; ++it)
          vm.emplace_back(it.row(), it.col(), c.coeff * it.value());
    } else {
      // pi transitions do not couple to the cavity (circular modes only)
      // and the pump carries no pi component; they still enter decay.
    }
  }
  h_cav.makeCompressed();
  terms.h_cav = h_cav;

  SparseOp v_plus(dim, dim), v_minus(dim, dim);
  v_plus.setFromTriplets(vp.begin(), vp.end());
  v_minus.setFromTriplets(vm.begin(), vm.end());
  v_plus.makeCompressed();
  v_minus.makeCompressed();
  terms.v_plus = v_plus;
  terms.v_plus_dag = SparseOp(v_plus.adjoint());
  terms.v_minus = v_minus;
  terms.v_minus_dag = SparseOp(v_minus.adjoint());
  return terms;
}

TimeDependentHamiltonian::TimeDependentHamiltonian(HamiltonianTerms terms, DriveFn drive,
                                                   ScaleFn coupling_scale)
    : terms_(std::move(terms)), drive_(std::move(drive)),
      coupling_scale_(std::move(coupling_scale)) {}

TimeDependentHamiltonian::Coefficients TimeDependentHamiltonian::coefficients(double t) const {
  Coefficients c;
  c.scale = coupling_scale_ ? coupling_scale_(t) : 1.0;
  c.f_plus = c.f_minus = Complex(0.0, 0.0);
  if (drive_) {
    const DriveSample s = drive_(t);
    if (s.omega != 0.0) {
      const Complex phase = std::exp(Complex(0.0, -s.delta_pc * t));
      c.f_plus = 0.5 * s.omega * s.w_plus * phase;
      c.f_minus = 0.5 * s.omega * s.w_minus * phase;
    }
  }
  return c;
}

void TimeDependentHamiltonian::apply(double t, const Vector& x, Vector& out) const {
  const Coefficients c = coefficients(t);
  out.noalias() = terms_.h0_diag.asDiagonal() * x;
  if (c.scale != 0.0) out.noalias() += c.scale * (terms_.h_cav * x);
  if (c.f_plus != 0.0) {
    out.noalias() += c.f_plus * (terms_.v_plus * x);
    out.noalias() += std::conj(c.f_plus) * (terms_.v_plus_dag * x);
  }
  if (c.f_minus != 0.0) {
    out.noalias() += c.f_minus * (terms_.v_minus * x);
    out.noalias() += std::conj(c.f_minus) * (terms_.v_minus_dag * x);
  }
}

void TimeDependentHamiltonian::apply_left(double t, const Matrix& m, Matrix& out) const {
  const Coefficients c = coefficients(t);
  out.noalias() = terms_.h0_diag.asDiagonal() * m;
  if (c.scale != 0.0) out.noalias() += c.scale * (terms_.h_cav * m);
  if (c.f_plus != 0.0) {
    out.noalias() += c.f_plus * (terms_.v_plus * m);
    out.noalias() += std::conj(c.f_plus) * (terms_.v_plus_dag * m);
  }
  if (c.f_minus != 0.0) {
    out.noalias() += c.f_minus * (terms_.v_minus * m);
    out.noalias() += std::conj(c.f_minus) * (terms_.v_minus_dag * m);
  }
}

void TimeDependentHamiltonian::apply_right(double t, const Matrix& m, Matrix& out) const {
  const Coefficients c = coefficients(t);
  out.noalias() = m * terms_.h0_diag.asDiagonal();
  if (c.scale != 0.0) out.noalias() += c.scale * (m * terms_.h_cav);
  if (c.f_plus != 0.0) {
    out.noalias() += c.f_plus * (m * terms_.v_plus);
    out.noalias() += std::conj(c.f_plus) * (m * terms_.v_plus_dag);
  }
  if (c.f_minus != 0.0) {
    out.noalias() += c.f_minus * (m * terms_.v_minus);
    out.noalias() += std::conj(c.f_minus) * (m * terms_.v_minus_dag);
  }
}

SparseOp TimeDependentHamiltonian::matrix(double t) const {
  const Coefficients c = coefficients(t);
  const int dim = dimension();
  SparseOp h(dim, dim);
  std::vector<Triplet> triplets;
  for (int i = 0; i < dim; ++i)
    if (terms_.h0_diag[i] != 0.0) triplets.emplace_back(i, i, terms_.h0_diag[i]);
  h.setFromTriplets(triplets.begin(), triplets.end());
  if (c.scale != 0.0) h = h + SparseOp(c.scale * terms_.h_cav);
  if (c.f_plus != 0.0)
    h = h + SparseOp(c.f_plus * terms_.v_plus) + SparseOp(std::conj(c.f_plus) * terms_.v_plus_dag);
  if (c.f_minus != 0.0)
    h = h + SparseOp(c.f_minus * terms_.v_minus) +
        SparseOp(std::conj(c.f_minus) * terms_.v_minus_dag);
  h.makeCompressed();
  return h;
}

TimeDependentHamiltonian make_pulse_hamiltonian(const CompositeSpace& space,
                                                const LevelScheme& scheme,
                                                const CavityConfig& cavity,
                                                const PumpPulse& pulse) {
  pulse.validate();
  HamiltonianTerms terms = build_hamiltonian_terms(space, scheme, cavity);
  auto drive = [pulse](double t) {
    DriveSample s;
    s.omega = pulse.envelope(t);
    s.delta_pc = pulse.delta_pc;
    s.w_plus = pulse.w_plus;
    s.w_minus = pulse.w_minus;
    return s;
  };
  return TimeDependentHamiltonian(std::move(terms), drive);
}

TimeDependentHamiltonian make_program_hamiltonian(const CompositeSpace& space,
                                                  const LevelScheme& scheme,
                                                  const CavityConfig& cavity,
                                                  const PulseProgram& program,
                                                  TimeDependentHamiltonian::ScaleFn coupling_scale) {
  program.validate();
  HamiltonianTerms terms = build_hamiltonian_terms(space, scheme, cavity);
  auto drive = [program](double t) { return sample_program(program, t); };
  return TimeDependentHamiltonian(std::move(terms), drive, std::move(coupling_scale));
}

SparseOp build_hamiltonian(const CompositeSpace& space, const LevelScheme& scheme,
                           const CavityConfig& cavity, const PumpPulse& pulse, double t) {
  return make_pulse_hamiltonian(space, scheme, cavity, pulse).matrix(t);
}

}  // namespace polsim
