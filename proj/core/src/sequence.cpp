#include "polsim/sequence.hpp"

#include <cmath>
#include <sstream>

#include "polsim/operators.hpp"

namespace polsim {

namespace {

std::vector<double> program_grid(const PulseProgram& program, int points_per_slot) {
  const int slots = program.total_pulses();
  std::vector<double> grid;
  grid.reserve(slots * points_per_slot + 1);
  for (int s = 0; s < slots; ++s)
    for (int j = 0; j < points_per_slot; ++j)
      grid.push_back(program.slot_start(s) + program.period * j / points_per_slot);
  grid.push_back(program.total_duration());
  return grid;
}

TimeDependentHamiltonian::ScaleFn transit_scale(const TransitModel& transit, double center) {
  return [transit, center](double t) { return transit.coupling_scale(t - center); };
}

}  // namespace

Matrix initial_density(const CompositeSpace& space, const LevelScheme& scheme,
                       InitialAtomState initial) {
  const int dim = space.dimension();
  Matrix rho = Matrix::Zero(dim, dim);
  auto set = [&](int level, double weight) {
    const int i = space.index(level, 0, 0);
    rho(i, i) = weight;
  };
  switch (initial) {
    case InitialAtomState::GroundMinus: set(scheme.ground_minus(), 1.0); break;
    case InitialAtomState::GroundZero: set(scheme.ground_zero(), 1.0); break;
    case InitialAtomState::GroundPlus: set(scheme.ground_plus(), 1.0); break;
    case InitialAtomState::MixedEdges:
      set(scheme.ground_minus(), 0.5);
      set(scheme.ground_plus(), 0.5);
      break;
  }
  return rho;
}

InitialStateFn initial_sampler(const CompositeSpace& space, const LevelScheme& scheme,
                               InitialAtomState initial) {
  const int dim = space.dimension();
  const int i_minus = space.index(scheme.ground_minus(), 0, 0);
  const int i_zero = space.index(scheme.ground_zero(), 0, 0);
  const int i_plus = space.index(scheme.ground_plus(), 0, 0);
  return [=](Rng& rng) {
    Vector psi = Vector::Zero(dim);
    switch (initial) {
      case InitialAtomState::GroundMinus: psi[i_minus] = 1.0; break;
      case InitialAtomState::GroundZero: psi[i_zero] = 1.0; break;
      case InitialAtomState::GroundPlus: psi[i_plus] = 1.0; break;
      case InitialAtomState::MixedEdges: psi[rng.bernoulli(0.5) ? i_plus : i_minus] = 1.0; break;
    }
    return psi;
  };
}

PhotonEnvelope run_sequence(const LevelScheme& scheme, const CavityConfig& cavity,
                            const PulseProgram& program, const TransitModel& transit,
                            double gamma, InitialAtomState initial, const SequenceOptions& opts) {
  program.validate();
  transit.validate();
  const CompositeSpace space = build_space(scheme, cavity);
  const auto channels = collapse_operators(space, scheme, cavity, gamma);
  const SparseOp n_plus = number_operator(space, Polarization::SigmaPlus);
  const SparseOp n_minus = number_operator(space, Polarization::SigmaMinus);
  const double flux_scale = 2.0 * cavity.kappa_out();
  const std::vector<double> grid = program_grid(program, opts.points_per_slot);
  const double center = 0.5 * program.total_duration();

  std::vector<double> weights = opts.g_scale_ensemble
                                    ? opts.g_scale_values
                                    : std::vector<double>{transit.g_scale};

  PhotonEnvelope env;
  env.times = grid;
  env.flux_plus.assign(grid.size(), 0.0);
  env.flux_minus.assign(grid.size(), 0.0);

  for (double scale_value : weights) {
    TransitModel t = transit;
    t.g_scale = scale_value;
    TimeDependentHamiltonian h = make_program_hamiltonian(space, scheme, cavity, program,
                                                          transit_scale(t, center));
    MasterEquation eq(h, channels);
    DensityState rho0{initial_density(space, scheme, initial), grid.front()};
    const double w = 1.0 / weights.size();
    try {
      eq.evolve(rho0, grid, opts.integrator, [&](int i, const DensityState& s) {
        env.flux_plus[i] += w * flux_scale * expectation(n_plus, s.rho).real();
        env.flux_minus[i] += w * flux_scale * expectation(n_minus, s.rho).real();
      });
    } catch (const IntegrationError& err) {
      const int slot = std::min(program.total_pulses() - 1,
                                static_cast<int>(err.time / program.period));
      std::ostringstream msg;
      msg << err.what() << " (pulse " << slot << ", t = " << err.time << " s)";
      throw IntegrationError(msg.str(), err.time);
    }
  }

  // Per-slot integrated emission probabilities (trapezoid on the flux grid).
  env.per_pulse.resize(program.total_pulses());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double dt = grid[i + 1] - grid[i];
    const int slot = std::min(program.total_pulses() - 1,
                              static_cast<int>((0.5 * (grid[i] + grid[i + 1])) / program.period));
    env.per_pulse[slot].plus += 0.5 * (env.flux_plus[i] + env.flux_plus[i + 1]) * dt;
    env.per_pulse[slot].minus += 0.5 * (env.flux_minus[i] + env.flux_minus[i + 1]) * dt;
  }
  return env;
}

ConditionalStats conditional_probabilities(const LevelScheme& scheme, const CavityConfig& cavity,
                                           const PulseProgram& program, const TransitModel& transit,
                                           double gamma, int n_trajectories, std::uint64_t seed,
                                           const ConditionalOptions& opts) {
  program.validate();
  if (n_trajectories < 2) throw std::invalid_argument("need at least two trajectories");
  for (std::size_t i = 1; i < program.pulses.size(); ++i) {
    if (program.pulses[i].expected_polarization() == program.pulses[i - 1].expected_polarization())
      throw std::invalid_argument("conditional probabilities need an alternating pulse program");
  }
  if (program.total_pulses() < 2)
    throw std::invalid_argument("conditional probabilities need at least two pulses");

  const CompositeSpace space = build_space(scheme, cavity);
  const auto channels = collapse_operators(space, scheme, cavity, gamma);
  TimeDependentHamiltonian h = make_program_hamiltonian(
      space, scheme, cavity, program,
      transit_scale(transit, 0.5 * program.total_duration()));

  // Only slot boundaries are needed; emissions carry exact times.
  const int slots = program.total_pulses();
  std::vector<double> grid(slots + 1);
  for (int s = 0; s <= slots; ++s) grid[s] = program.slot_start(s);

  EnsembleOptions eopts;
  eopts.n_trajectories = n_trajectories;
  eopts.seed = seed;
  eopts.n_threads = opts.n_threads;
  eopts.keep_records = true;
  eopts.mcwf = opts.mcwf;
  EnsembleStats stats = mcwf_ensemble(initial_sampler(space, scheme, InitialAtomState::MixedEdges),
                                      h, channels, grid, {}, eopts);

  // Find the mirror channels once.
  int ch_plus = -1, ch_minus = -1;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (channels[k].is_mirror(Polarization::SigmaPlus)) ch_plus = static_cast<int>(k);
    if (channels[k].is_mirror(Polarization::SigmaMinus)) ch_minus = static_cast<int>(k);
  }

  long denom_minus = 0, num_minus = 0;  // sigma- then sigma+
  long denom_plus = 0, num_plus = 0;    // sigma+ then sigma-
  std::vector<char> got_plus(slots), got_minus(slots);
  for (const auto& record : stats.records) {
    std::fill(got_plus.begin(), got_plus.end(), 0);
    std::fill(got_minus.begin(), got_minus.end(), 0);
    for (const auto& ev : record.events) {
      const int slot = std::min(slots - 1, static_cast<int>(ev.time / program.period));
      if (ev.channel == ch_plus) got_plus[slot] = 1;
      if (ev.channel == ch_minus) got_minus[slot] = 1;
    }
    for (int s = 0; s + 1 < slots; ++s) {
      const bool next_is_plus =
          program.pulse(s + 1).expected_polarization() == Polarization::SigmaPlus;
      if (got_minus[s] && next_is_plus) {
        ++denom_minus;
        if (got_plus[s + 1]) ++num_minus;
      }
      if (got_plus[s] && !next_is_plus) {
        ++denom_plus;
        if (got_minus[s + 1]) ++num_plus;
      }
    }
  }

  auto finish = [](long num, long denom, double& p, double& se, bool& low) {
    p = denom > 0 ? static_cast<double>(num) / denom : 0.0;
    se = denom > 0 ? std::sqrt(std::max(p * (1.0 - p), 0.0) / denom) : 0.0;
    if (denom < 100) {
      low = true;
      // Conservative bound when the conditioning sample is tiny.
      se = std::max(se, 0.5 / std::sqrt(static_cast<double>(std::max(denom, 1L))));
    }
  };
  ConditionalStats out;
  out.n_cond_minus = denom_minus;
  out.n_cond_plus = denom_plus;
  bool low = false;
  finish(num_minus, denom_minus, out.p_plus_given_minus, out.se_plus_given_minus, low);
  finish(num_plus, denom_plus, out.p_minus_given_plus, out.se_minus_given_plus, low);
  out.low_statistics = low;
  return out;
}

PeakTimes peak_flux_times(const PhotonEnvelope& envelope, const PulseProgram& program) {
  PeakTimes peaks;
  double best_plus = 0.0, best_minus = 0.0;
  for (std::size_t i = 0; i < envelope.times.size(); ++i) {
    const double t = envelope.times[i];
    const int slot = std::min(program.total_pulses() - 1, static_cast<int>(t / program.period));
    if (slot < 0) continue;
    const double local = t - program.slot_start(slot);
    if (local > program.pulse(slot).t_p) continue;  // between pulses
    const bool plus_slot = program.pulse(slot).expected_polarization() == Polarization::SigmaPlus;
    if (plus_slot && envelope.flux_plus[i] > best_plus) {
      best_plus = envelope.flux_plus[i];
      peaks.t_plus = t;
    }
    if (!plus_slot && envelope.flux_minus[i] > best_minus) {
      best_minus = envelope.flux_minus[i];
      peaks.t_minus = t;
    }
  }
  return peaks;
}

}  // namespace polsim
