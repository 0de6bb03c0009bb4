#pragma once

#include <string>
#include <vector>

#include "polsim/correlation.hpp"
#include "polsim/detection.hpp"
#include "polsim/sequence.hpp"

namespace polsim {

enum class RelativePolarization { Parallel, Perpendicular };

// Joint detection-time density p(t1, t2) behind the 50:50 beamsplitter for a
// photon pair described by two G1 surfaces on a common grid.
struct JointDensity {
  std::vector<double> times;
  Eigen::MatrixXd p;
  double clamped_magnitude = 0.0;  // total negative mass clamped to zero
  double peak = 0.0;               // max density before clamping

  double grid_step() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

// Perpendicular: distinguishable photons, pure product form.
// Parallel: subtracts the two-photon interference term weighted by
// bs_overlap^2 (the single-photon interferometer visibility).
JointDensity hom_coincidence_density(const CorrelationSurface& g1_a,
                                     const CorrelationSurface& g1_b,
                                     RelativePolarization relative, double bs_overlap);

struct VisibilityResult {
  double v = 0.0;
  double c_par = 0.0;
  double c_perp = 0.0;
  bool degenerate = false;  // c_perp = 0
};

// V = 1 - C_par/C_perp with both C's integrated over |t2 - t1| < window.
VisibilityResult visibility(const JointDensity& par, const JointDensity& perp, double window);

// Coincidences versus detection-time difference: c(tau_k) = sum_t p(t, t+tau_k) dt.
struct CoincidenceCurve {
  std::vector<double> tau;
  std::vector<double> value;
};
CoincidenceCurve coincidences_vs_tau(const JointDensity& density);

// G1 surfaces of a consecutively generated photon pair: the sigma+ photon
// from |+1> under its generating pulse and the sigma- photon from |-1>,
// both on an n_points grid over [0, t_p] (the delay line maps the two slots
// onto a common time axis). Surfaces are flux-normalized with 2 kappa_out.
struct PhotonPairSurfaces {
  CorrelationSurface plus;
  CorrelationSurface minus;
};

PhotonPairSurfaces photon_pair_surfaces(const LevelScheme& scheme, const CavityConfig& cavity,
                                        const PumpPulse& pulse_plus, const PumpPulse& pulse_minus,
                                        double gamma, int n_points,
                                        const IntegratorOptions& opts, int n_threads = 0);

// One grid point of the pump-parameter scan.
struct ScanPoint {
  double omega0 = 0.0;  // rad/s
  double t_p = 0.0;     // s
  double visibility = 0.0;
  double p_plus_given_minus = 0.0;
  double p_minus_given_plus = 0.0;
  double se_plus_given_minus = 0.0;
  double se_minus_given_plus = 0.0;
  bool ok = false;
  std::string error;
};

struct ScanOptions {
  int g1_points = 96;
  IntegratorOptions integrator;
  int n_trajectories = 2000;
  int conditional_pairs = 4;  // pulse pairs per trajectory
  std::uint64_t seed = 1;
  int n_threads = 0;
  McwfOptions mcwf;
};

// HOM visibility and conditional probabilities over {omega0} x {t_p};
// failures are recorded per point and the scan continues.
std::vector<ScanPoint> visibility_scan(const LevelScheme& scheme, const CavityConfig& cavity,
                                       double delta_b, std::span<const double> omega0_values,
                                       std::span<const double> tp_values,
                                       const TransitModel& transit, double gamma,
                                       const DetectionConfig& detection, const ScanOptions& opts);

}  // namespace polsim
