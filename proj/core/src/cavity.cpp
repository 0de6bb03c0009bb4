#include "polsim/cavity.hpp"

#include <cmath>
#include <stdexcept>

#include "polsim/constants.hpp"

namespace polsim {

void CavityConfig::validate() const {
  if (g_max < 0.0) throw std::invalid_argument("g_max must be nonnegative");
  if (kappa < 0.0) throw std::invalid_argument("kappa must be nonnegative");
  if (kappa_out_fraction < 0.0 || kappa_out_fraction > 1.0)
    throw std::invalid_argument("kappa_out_fraction must lie in [0,1]");
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
}

double zeeman_splitting(double field_gauss, double lande_gf) {
  if (field_gauss < 0.0) throw std::invalid_argument("magnetic field must be nonnegative");
  return std::abs(lande_gf) * kBohrMagnetonHzPerGauss * field_gauss * kTwoPi;
}

double cavity_kappa(double length_m, double finesse) {
  if (length_m <= 0.0) throw std::invalid_argument("cavity length must be positive");
  if (finesse <= 0.0) throw std::invalid_argument("finesse must be positive");
  return std::numbers::pi * kSpeedOfLight / (2.0 * length_m * finesse);
}

}  // namespace polsim
