#pragma once

#include <cmath>
#include <stdexcept>

namespace polsim {

// Phenomenological model of an atom falling through the cavity mode: the
// coupling is either constant (g_scale) or follows a Gaussian of total
// duration `transit_duration` (std dev = duration/4), centered within the
// simulated window.
struct TransitModel {
  enum class Mode { Constant, Gaussian };

  Mode mode = Mode::Constant;
  double g_scale = 1.0;
  double transit_duration = 0.0;  // s, Gaussian mode only
  double arrival_rate = 2000.0;   // atoms per second, for stream simulations

  // Coupling scale at time t relative to the transit center.
  double coupling_scale(double t_from_center) const {
    if (mode == Mode::Constant) return g_scale;
    const double sigma = transit_duration / 4.0;
    const double x = t_from_center / sigma;
    return g_scale * std::exp(-0.5 * x * x);
  }

  void validate() const {
    if (g_scale <= 0.0 || g_scale > 1.0)
      throw std::invalid_argument("g_scale must lie in (0,1]");
    if (mode == Mode::Gaussian && transit_duration <= 0.0)
      throw std::invalid_argument("gaussian transit needs a positive duration");
    if (arrival_rate < 0.0) throw std::invalid_argument("arrival rate must be nonnegative");
  }
};

}  // namespace polsim
