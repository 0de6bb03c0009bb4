#pragma once

#include <complex>
#include <vector>

#include "polsim/level_scheme.hpp"

namespace polsim {

// One pump pulse: sin^2 envelope, fixed pump-cavity detuning, circular
// polarization content (w_plus, w_minus) as complex amplitudes.
struct PumpPulse {
  double omega0 = 0.0;    // rad/s, peak Rabi frequency
  double t_p = 0.0;       // s
  double delta_pc = 0.0;  // rad/s, omega_pump - omega_cavity
  std::complex<double> w_plus{0.7071067811865476, 0.0};
  std::complex<double> w_minus{0.7071067811865476, 0.0};

  // Omega0 sin^2(pi t / t_p) on [0, t_p], zero outside.
  double envelope(double t_in_pulse) const;

  // Which photon polarization this pulse is meant to produce: a blue pump
  // (delta_pc > 0) drives the transfer |+1> -> |-1| and emits sigma+.
  Polarization expected_polarization() const {
    return delta_pc >= 0.0 ? Polarization::SigmaPlus : Polarization::SigmaMinus;
  }

  void validate() const;
};

// Repeating pulse sequence. Each pulse occupies one slot of length `period`
// (active during [0, t_p] of the slot); the base list is repeated
// `repetitions` times.
struct PulseProgram {
  std::vector<PumpPulse> pulses;
  double period = 0.0;  // s, slot length, >= max t_p
  int repetitions = 1;

  // Two-slot program alternating delta_pc = +2 delta_b then -2 delta_b.
  static PulseProgram alternating(double omega0, double t_p, double delta_b,
                                  double period, int repetitions);

  int total_pulses() const { return static_cast<int>(pulses.size()) * repetitions; }
  const PumpPulse& pulse(int slot) const { return pulses[slot % pulses.size()]; }
  double slot_start(int slot) const { return slot * period; }
  double total_duration() const { return total_pulses() * period; }

  void validate() const;
};

// Instantaneous drive parameters at absolute time t.
struct DriveSample {
  double omega = 0.0;
  double delta_pc = 0.0;
  std::complex<double> w_plus{0.0, 0.0};
  std::complex<double> w_minus{0.0, 0.0};
};

DriveSample sample_program(const PulseProgram& program, double t);

}  // namespace polsim
