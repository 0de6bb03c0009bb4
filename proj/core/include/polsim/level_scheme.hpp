#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polsim/constants.hpp"

namespace polsim {

// Hyperfine offset of the second excited level below the primary one
// (87Rb 5P3/2, F'=0 relative to F'=1).
inline constexpr double kDefaultSecondExcitedOffset = -mhz_to_rad(72.2);

enum class Polarization { SigmaPlus, SigmaMinus, Pi };

// Photon angular momentum along the quantization axis, in units of hbar.
constexpr int polarization_q(Polarization p) {
  switch (p) {
    case Polarization::SigmaPlus: return +1;
    case Polarization::SigmaMinus: return -1;
    case Polarization::Pi: return 0;
  }
  return 0;
}

const char* polarization_name(Polarization p);

struct AtomLevel {
  std::string label;
  int f = 0;
  int mf = 0;
  double energy = 0.0;  // rad/s, rotating-frame diagonal entry
  bool excited = false;
  bool sink = false;  // absorbing level, no couplings
};

// Dimensionless dipole coupling between a ground and an excited level for a
// given field polarization, normalized so the photon-generation transition
// has |coeff| = 1.
struct DipoleCoupling {
  int ground = 0;
  int excited = 0;
  Polarization pol = Polarization::SigmaPlus;
  double coeff = 0.0;
};

// Spontaneous-emission channel. Branching fractions of one excited level sum
// to 1; the total decay rate per excited level is 2*gamma.
struct DecayChannel {
  int excited = 0;
  int ground = 0;  // may be the sink level
  double branching = 0.0;
};

// Atomic level structure for the photon source: the F=1 ground manifold, one
// or two mF'=0 excited levels, and optionally an absorbing level standing in
// for decay out of F=1 (no repumper, so that population never returns).
class LevelScheme {
 public:
  LevelScheme(std::vector<AtomLevel> levels, std::vector<DipoleCoupling> couplings,
              std::vector<DecayChannel> decay_channels);

  // Four levels: |-1>, |0>, |+1> of F=1 and one excited level. Fully
  // symmetric under mF -> -mF; decay branches only within F=1.
  static LevelScheme minimal(double delta_b);

  // Adds the second excited level (the lower hyperfine excited state, offset
  // `delta_excited2`, default -2pi*72.2 MHz) and, when `include_loss_level`
  // is set, an absorbing level collecting decay out of F=1.
  static LevelScheme extended(double delta_b, double delta_excited2,
                              bool include_loss_level = true);
  static LevelScheme extended(double delta_b);

  // Replaces the sign of the sigma- coupling on the primary excited level.
  // The relative sign of the two Raman legs controls which dressed state is
  // dark; it is a configuration knob, not a derived quantity.
  void set_sigma_minus_sign(double sign);

  const std::vector<AtomLevel>& levels() const { return levels_; }
  const std::vector<DipoleCoupling>& couplings() const { return couplings_; }
  const std::vector<DecayChannel>& decay_channels() const { return decay_channels_; }

  int size() const { return static_cast<int>(levels_.size()); }
  const AtomLevel& level(int i) const { return levels_[i]; }
  std::optional<int> index_of(const std::string& label) const;

  // Fixed indices of the standard layout produced by the factories.
  int ground_minus() const { return 0; }
  int ground_zero() const { return 1; }
  int ground_plus() const { return 2; }
  int excited_primary() const { return 3; }
  std::optional<int> excited_secondary() const;
  std::optional<int> sink() const;

 private:
  void validate() const;

  std::vector<AtomLevel> levels_;
  std::vector<DipoleCoupling> couplings_;
  std::vector<DecayChannel> decay_channels_;
};

}  // namespace polsim
