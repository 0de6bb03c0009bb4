#pragma once

namespace polsim {

// Two-mode cavity (sigma+ and sigma-, degenerate) parameters. `kappa` is the
// field decay rate; the photon escape rate through the output mirror is
// 2*kappa_out_fraction*kappa.
struct CavityConfig {
  double g_max = 0.0;              // rad/s, coupling on the generation transition
  double kappa = 0.0;              // rad/s, total field decay rate
  double kappa_out_fraction = 1.0; // share of decay through the output mirror
  int n_max = 2;                   // Fock cutoff per polarization mode
  double detuning_c = 0.0;         // rad/s, excited level relative to the frame

  double kappa_out() const { return kappa_out_fraction * kappa; }
  double kappa_loss() const { return (1.0 - kappa_out_fraction) * kappa; }

  void validate() const;
};

// Zeeman splitting Delta_B = |gF| mu_B B / hbar for a field in gauss.
// Rejects negative fields.
double zeeman_splitting(double field_gauss, double lande_gf);

// Cavity field decay rate kappa = pi c / (2 L F) from geometry, i.e. the
// angular half-linewidth FSR/(2F). Rejects nonpositive inputs.
double cavity_kappa(double length_m, double finesse);

}  // namespace polsim
