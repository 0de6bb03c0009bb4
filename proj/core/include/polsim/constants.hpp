#pragma once

#include <numbers>

namespace polsim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Speed of light [m/s].
inline constexpr double kSpeedOfLight = 299'792'458.0;

// Bohr magneton over Planck constant, in Hz per gauss.
inline constexpr double kBohrMagnetonHzPerGauss = 1.3996e6;

// Unit helpers. All internal frequencies are angular (rad/s); config files
// and the paper quote nu = omega / 2pi in MHz.
constexpr double mhz_to_rad(double mhz) { return mhz * 1e6 * kTwoPi; }
constexpr double rad_to_mhz(double rad) { return rad / (1e6 * kTwoPi); }
constexpr double us_to_s(double us) { return us * 1e-6; }
constexpr double ns_to_s(double ns) { return ns * 1e-9; }

}  // namespace polsim
