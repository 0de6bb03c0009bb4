#pragma once

#include <optional>
#include <vector>

#include "polsim/collapse.hpp"
#include "polsim/master.hpp"
#include "polsim/mcwf.hpp"
#include "polsim/pulse.hpp"
#include "polsim/transit.hpp"

namespace polsim {

enum class InitialAtomState { GroundMinus, GroundZero, GroundPlus, MixedEdges };

// Polarization-resolved photon flux through the output mirror,
// 2 kappa_out <a_q^dag a_q>(t), plus per-slot integrated probabilities.
struct PhotonEnvelope {
  std::vector<double> times;
  std::vector<double> flux_plus;
  std::vector<double> flux_minus;
  struct SlotTotals {
    double plus = 0.0;
    double minus = 0.0;
  };
  std::vector<SlotTotals> per_pulse;
};

struct SequenceOptions {
  int points_per_slot = 284;  // output grid resolution
  IntegratorOptions integrator;
  // Weighted average over reduced couplings, standing in for the unknown
  // transverse atom position. Off by default.
  bool g_scale_ensemble = false;
  std::vector<double> g_scale_values = {1.0, 0.8, 0.6, 0.4};
};

// Master-equation evolution across the whole program; the atomic state is
// carried from pulse to pulse (no reset, no repumping). gamma is the atomic
// field decay rate (total spontaneous rate 2*gamma).
PhotonEnvelope run_sequence(const LevelScheme& scheme, const CavityConfig& cavity,
                            const PulseProgram& program, const TransitModel& transit,
                            double gamma, InitialAtomState initial,
                            const SequenceOptions& opts = {});

struct ConditionalStats {
  double p_plus_given_minus = 0.0;
  double p_minus_given_plus = 0.0;
  double se_plus_given_minus = 0.0;
  double se_minus_given_plus = 0.0;
  long n_cond_minus = 0;  // slots with a sigma- mirror photon and a successor slot
  long n_cond_plus = 0;
  bool low_statistics = false;
};

struct ConditionalOptions {
  McwfOptions mcwf;
  int n_threads = 0;
};

// Quantum-jump estimate of the conditional generation probabilities:
// among slots with an output-mirror sigma-/+ photon, the fraction whose
// successor slot produced the opposite mirror photon. Intracavity
// probabilities: no detector losses are applied.
ConditionalStats conditional_probabilities(const LevelScheme& scheme, const CavityConfig& cavity,
                                           const PulseProgram& program, const TransitModel& transit,
                                           double gamma, int n_trajectories, std::uint64_t seed,
                                           const ConditionalOptions& opts = {});

struct PeakTimes {
  std::optional<double> t_plus;   // absolute time of the sigma+ flux maximum
  std::optional<double> t_minus;  // within their generating slots
};

PeakTimes peak_flux_times(const PhotonEnvelope& envelope, const PulseProgram& program);

// Initial density matrix / trajectory sampler for a chosen preparation.
Matrix initial_density(const CompositeSpace& space, const LevelScheme& scheme,
                       InitialAtomState initial);
InitialStateFn initial_sampler(const CompositeSpace& space, const LevelScheme& scheme,
                               InitialAtomState initial);

}  // namespace polsim
