#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "polsim/cavity.hpp"
#include "polsim/detection.hpp"
#include "polsim/level_scheme.hpp"
#include "polsim/pulse.hpp"
#include "polsim/sequence.hpp"
#include "polsim/transit.hpp"

namespace polsim {

// Experiment description as read from the sectioned key/value config file.
// Frequencies are MHz (omega/2pi), times carry their unit in the key name;
// conversion to rad/s and seconds happens in the builder functions below.
struct ExperimentConfig {
  // [scheme]
  std::string scheme_variant = "extended";  // minimal | extended
  bool include_loss_level = true;
  double second_excited_offset_mhz = -72.2;
  double sigma_minus_sign = -1.0;
  double gamma_mhz = 3.0;
  std::string initial_state = "mixed";  // mixed | minus | zero | plus

  // [magnetic]
  double field_gauss = 20.0;
  double lande_gf = -0.5;

  // [cavity]
  double g_max_mhz = 3.1;
  double kappa_mhz = 1.25;
  double kappa_out_fraction = 0.93;
  int n_max = 2;
  double detuning_c_mhz = 0.0;

  // [pulse]
  double omega0_mhz = 24.0;
  double tp_us = 1.42;
  double period_us = 1.42;
  int pairs = 4;
  std::string first_pulse = "plus";  // plus | minus
  std::optional<double> delta_pc_mhz;  // empty = auto (+-2 Delta_B)
  double w_plus_re = 0.7071067811865476, w_plus_im = 0.0;
  double w_minus_re = 0.7071067811865476, w_minus_im = 0.0;

  // [transit]
  std::string transit_mode = "constant";  // constant | gaussian
  double g_scale = 1.0;
  double transit_duration_us = 22.72;
  double arrival_rate_per_ms = 2.0;
  bool g_scale_ensemble = false;

  // [detection]
  std::string waveplate = "balanced";  // balanced | polarizing
  double delay_long_us = 1.42;
  bool long_fiber_open = true;
  double bs_overlap = 0.98994949366116653;
  double efficiency = 0.05;
  double dark_rate_per_s = 0.0;
  double bin_width_ns = 150.0;

  // [run]
  std::uint64_t seed = 1;
  double time_step_ns = 0.25;
  double mcwf_time_step_ns = 0.5;
  int points_per_slot = 284;
  int trajectories = 10000;
  int g1_points = 96;

  // [hbt]
  int hbt_transits = 300;
  double hbt_tau_max_us = 13.0;
  double hbt_efficiency = 0.6;  // chain efficiency for click statistics

  // [scan]
  std::vector<double> scan_omega0_mhz = {12.0, 18.0, 24.0};
  std::vector<double> scan_tp_us = {0.71, 1.42};
  int scan_trajectories = 2000;
  int scan_pairs = 4;

  bool operator==(const ExperimentConfig&) const = default;
};

// The numbers quoted for the experiment: (g, kappa, gamma)/2pi =
// (3.1, 1.25, 3.0) MHz, 93% output coupling, 20 G, Omega0/2pi = 24 MHz,
// t_p = 1.42 us, alternating +-2 Delta_B detunings.
ExperimentConfig paper_defaults();

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& config);

// Derived builders.
double config_delta_b(const ExperimentConfig& config);
LevelScheme make_scheme(const ExperimentConfig& config);
CavityConfig make_cavity(const ExperimentConfig& config);
PulseProgram make_program(const ExperimentConfig& config);
TransitModel make_transit(const ExperimentConfig& config);
DetectionConfig make_detection(const ExperimentConfig& config);
InitialAtomState make_initial_state(const ExperimentConfig& config);
double config_gamma(const ExperimentConfig& config);

}  // namespace polsim
