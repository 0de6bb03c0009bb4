#include "polsim/hom.hpp"

#include <cmath>
#include <stdexcept>

namespace polsim {

JointDensity hom_coincidence_density(const CorrelationSurface& g1_a,
                                     const CorrelationSurface& g1_b,
                                     RelativePolarization relative, double bs_overlap) {
  const int n = static_cast<int>(g1_a.times.size());
  if (g1_b.times.size() != g1_a.times.size())
    throw std::invalid_argument("G1 surfaces live on different grids");
  for (int i = 0; i < n; ++i)
    if (std::abs(g1_a.times[i] - g1_b.times[i]) > 1e-15)
      throw std::invalid_argument("G1 surfaces live on different grids");
  if (bs_overlap < 0.0 || bs_overlap > 1.0)
    throw std::invalid_argument("bs_overlap must lie in [0,1]");

  JointDensity density;
  density.times = g1_a.times;
  density.p.resize(n, n);
  const double overlap2 = bs_overlap * bs_overlap;

  for (int i = 0; i < n; ++i) {
    const double fa_i = g1_a.g(i, i).real();
    const double fb_i = g1_b.g(i, i).real();
    for (int j = 0; j < n; ++j) {
      double p = 0.25 * (fa_i * g1_b.g(j, j).real() + g1_a.g(j, j).real() * fb_i);
      if (relative == RelativePolarization::Parallel) {
        p -= 0.5 * overlap2 * (g1_a.g(i, j) * std::conj(g1_b.g(i, j))).real();
      }
      density.peak = std::max(density.peak, p);
      if (p < 0.0) {
        density.clamped_magnitude += -p;
        p = 0.0;
      }
      density.p(i, j) = p;
    }
  }
  return density;
}

VisibilityResult visibility(const JointDensity& par, const JointDensity& perp, double window) {
  const int n = static_cast<int>(par.times.size());
  if (perp.times.size() != par.times.size())
    throw std::invalid_argument("densities live on different grids");
  if (window <= 0.0) throw std::invalid_argument("integration window must be positive");

  const double dt = par.grid_step();
  double c_par = 0.0, c_perp = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(par.times[j] - par.times[i]) >= window) continue;
      c_par += par.p(i, j);
      c_perp += perp.p(i, j);
    }
  }
  c_par *= dt * dt;
  c_perp *= dt * dt;

  VisibilityResult result;
  result.c_par = c_par;
  result.c_perp = c_perp;
  if (c_perp <= 0.0) {
    result.degenerate = true;
    return result;
  }
  result.v = 1.0 - c_par / c_perp;
  return result;
}

CoincidenceCurve coincidences_vs_tau(const JointDensity& density) {
  const int n = static_cast<int>(density.times.size());
  const double dt = density.grid_step();
  CoincidenceCurve curve;
  curve.tau.reserve(2 * n - 1);
  curve.value.reserve(2 * n - 1);
  for (int k = -(n - 1); k <= n - 1; ++k) {
    double sum = 0.0;
    for (int i = std::max(0, -k); i < n - std::max(0, k); ++i) sum += density.p(i, i + k);
    curve.tau.push_back(k * dt);
    curve.value.push_back(sum * dt);
  }
  return curve;
}

PhotonPairSurfaces photon_pair_surfaces(const LevelScheme& scheme, const CavityConfig& cavity,
                                        const PumpPulse& pulse_plus, const PumpPulse& pulse_minus,
                                        double gamma, int n_points,
                                        const IntegratorOptions& opts, int n_threads) {
  if (n_points < 2) throw std::invalid_argument("need at least two grid points");
  if (pulse_plus.expected_polarization() != Polarization::SigmaPlus ||
      pulse_minus.expected_polarization() != Polarization::SigmaMinus)
    throw std::invalid_argument("pulse pair must target sigma+ then sigma-");
  if (std::abs(pulse_plus.t_p - pulse_minus.t_p) > 1e-15)
    throw std::invalid_argument("pulse pair must share one duration");

  const CompositeSpace space = build_space(scheme, cavity);
  const auto channels = collapse_operators(space, scheme, cavity, gamma);
  const double scale = 2.0 * cavity.kappa_out();
  const std::vector<double> grid = linspace(0.0, pulse_plus.t_p, n_points - 1);

  PhotonPairSurfaces pair;
  {
    TimeDependentHamiltonian h = make_pulse_hamiltonian(space, scheme, cavity, pulse_plus);
    DensityState rho0{initial_density(space, scheme, InitialAtomState::GroundPlus), 0.0};
    pair.plus = g1_surface(h, channels, rho0, grid,
                           annihilator(space, Polarization::SigmaPlus), opts, scale, n_threads);
  }
  {
    TimeDependentHamiltonian h = make_pulse_hamiltonian(space, scheme, cavity, pulse_minus);
    DensityState rho0{initial_density(space, scheme, InitialAtomState::GroundMinus), 0.0};
    pair.minus = g1_surface(h, channels, rho0, grid,
                            annihilator(space, Polarization::SigmaMinus), opts, scale, n_threads);
  }
  return pair;
}

std::vector<ScanPoint> visibility_scan(const LevelScheme& scheme, const CavityConfig& cavity,
                                       double delta_b, std::span<const double> omega0_values,
                                       std::span<const double> tp_values,
                                       const TransitModel& transit, double gamma,
                                       const DetectionConfig& detection, const ScanOptions& opts) {
  if (omega0_values.empty() || tp_values.empty())
    throw std::invalid_argument("scan grid is empty");

  std::vector<ScanPoint> table;
  for (const double omega0 : omega0_values) {
    for (const double tp : tp_values) {
      ScanPoint point;
      point.omega0 = omega0;
      point.t_p = tp;
      try {
        PumpPulse plus;
        plus.omega0 = omega0;
        plus.t_p = tp;
        plus.delta_pc = +2.0 * delta_b;
        PumpPulse minus = plus;
        minus.delta_pc = -2.0 * delta_b;

        PhotonPairSurfaces pair = photon_pair_surfaces(scheme, cavity, plus, minus, gamma,
                                                       opts.g1_points, opts.integrator,
                                                       opts.n_threads);
        const JointDensity par = hom_coincidence_density(
            pair.plus, pair.minus, RelativePolarization::Parallel, detection.bs_overlap);
        const JointDensity perp = hom_coincidence_density(
            pair.plus, pair.minus, RelativePolarization::Perpendicular, detection.bs_overlap);
        const VisibilityResult vis = visibility(par, perp, tp);
        if (vis.degenerate) throw std::runtime_error("no perpendicular coincidences");
        point.visibility = vis.v;

        PulseProgram program;
        program.pulses = {minus, plus};
        program.period = tp;
        program.repetitions = opts.conditional_pairs;
        ConditionalOptions copts;
        copts.mcwf = opts.mcwf;
        copts.n_threads = opts.n_threads;
        const ConditionalStats stats = conditional_probabilities(
            scheme, cavity, program, transit, gamma, opts.n_trajectories, opts.seed, copts);
        point.p_plus_given_minus = stats.p_plus_given_minus;
        point.p_minus_given_plus = stats.p_minus_given_plus;
        point.se_plus_given_minus = stats.se_plus_given_minus;
        point.se_minus_given_plus = stats.se_minus_given_plus;
        point.ok = true;
      } catch (const std::exception& ex) {
        point.ok = false;
        point.error = ex.what();
      }
      table.push_back(std::move(point));
    }
  }
  return table;
}

}  // namespace polsim
