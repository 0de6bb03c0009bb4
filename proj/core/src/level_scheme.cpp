#include "polsim/level_scheme.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "polsim/constants.hpp"

namespace polsim {

namespace {

// Dipole matrix elements of the 87Rb D2 line between the F=1 ground manifold
// and the mF'=0 excited levels, in units of the element on the generation
// transition |g-1> <-> F'=1. Signs follow the standard tables: the two
// circular legs of F'=1 are antisymmetric, those of F'=0 symmetric.
constexpr double kSecondExcitedRatio = 0.8944271909999159;  // 2/sqrt(5)

// Branching fractions for spontaneous decay (squared matrix elements over
// the full D2 manifold). F'=1, mF'=0 decays 5/12 to each of |+-1>, nothing
// to |0> (forbidden), and 1/6 out of F=1. F'=0 decays 1/3 to each F=1 state.
constexpr double kPrimaryToEdge = 5.0 / 12.0;
constexpr double kPrimaryToLost = 1.0 / 6.0;
constexpr double kSecondaryToEach = 1.0 / 3.0;

}  // namespace

const char* polarization_name(Polarization p) {
  switch (p) {
    case Polarization::SigmaPlus: return "sigma+";
    case Polarization::SigmaMinus: return "sigma-";
    case Polarization::Pi: return "pi";
  }
  return "?";
}

LevelScheme::LevelScheme(std::vector<AtomLevel> levels, std::vector<DipoleCoupling> couplings,
                         std::vector<DecayChannel> decay_channels)
    : levels_(std::move(levels)),
      couplings_(std::move(couplings)),
      decay_channels_(std::move(decay_channels)) {
  validate();
}

LevelScheme LevelScheme::minimal(double delta_b) {
  std::vector<AtomLevel> levels = {
      {"g-1", 1, -1, +delta_b, false, false},
      {"g0", 1, 0, 0.0, false, false},
      {"g+1", 1, +1, -delta_b, false, false},
      {"e", 1, 0, 0.0, true, false},
  };
  std::vector<DipoleCoupling> couplings = {
      {0, 3, Polarization::SigmaPlus, +1.0},
      {2, 3, Polarization::SigmaMinus, -1.0},
  };
  // Idealized scheme: branching renormalized within F=1 (the pi channel to
  // |0> vanishes for F=1 -> F'=1, mF'=0).
  std::vector<DecayChannel> decay = {
      {3, 0, 0.5},
      {3, 2, 0.5},
  };
  return LevelScheme(std::move(levels), std::move(couplings), std::move(decay));
}

LevelScheme LevelScheme::extended(double delta_b, double delta_excited2,
                                  bool include_loss_level) {
  std::vector<AtomLevel> levels = {
      {"g-1", 1, -1, +delta_b, false, false},
      {"g0", 1, 0, 0.0, false, false},
      {"g+1", 1, +1, -delta_b, false, false},
      {"e", 1, 0, 0.0, true, false},
      {"e0", 0, 0, delta_excited2, true, false},
  };
  std::vector<DipoleCoupling> couplings = {
      {0, 3, Polarization::SigmaPlus, +1.0},
      {2, 3, Polarization::SigmaMinus, -1.0},
      {0, 4, Polarization::SigmaPlus, kSecondExcitedRatio},
      {2, 4, Polarization::SigmaMinus, kSecondExcitedRatio},
      {1, 4, Polarization::Pi, kSecondExcitedRatio},
  };
  std::vector<DecayChannel> decay;
  if (include_loss_level) {
    levels.push_back({"lost", 2, 0, 0.0, false, true});
    const int lost = 5;
    decay = {
        {3, 0, kPrimaryToEdge}, {3, 2, kPrimaryToEdge}, {3, lost, kPrimaryToLost},
        {4, 0, kSecondaryToEach}, {4, 1, kSecondaryToEach}, {4, 2, kSecondaryToEach},
    };
  } else {
    decay = {
        {3, 0, 0.5}, {3, 2, 0.5},
        {4, 0, kSecondaryToEach}, {4, 1, kSecondaryToEach}, {4, 2, kSecondaryToEach},
    };
  }
  return LevelScheme(std::move(levels), std::move(couplings), std::move(decay));
}

LevelScheme LevelScheme::extended(double delta_b) {
  return extended(delta_b, kDefaultSecondExcitedOffset, true);
}

void LevelScheme::set_sigma_minus_sign(double sign) {
  for (auto& c : couplings_) {
    if (c.ground == ground_plus() && c.excited == excited_primary() &&
        c.pol == Polarization::SigmaMinus) {
      c.coeff = sign * std::abs(c.coeff);
    }
  }
  validate();
}

std::optional<int> LevelScheme::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (levels_[i].label == label) return i;
  }
  return std::nullopt;
}

std::optional<int> LevelScheme::excited_secondary() const {
  for (int i = 0; i < size(); ++i) {
    if (levels_[i].excited && i != excited_primary()) return i;
  }
  return std::nullopt;
}

std::optional<int> LevelScheme::sink() const {
  for (int i = 0; i < size(); ++i) {
    if (levels_[i].sink) return i;
  }
  return std::nullopt;
}

void LevelScheme::validate() const {
  if (levels_.empty()) throw std::invalid_argument("level scheme is empty");
  for (const auto& c : couplings_) {
    if (c.ground < 0 || c.ground >= size() || c.excited < 0 || c.excited >= size())
      throw std::invalid_argument("coupling references an unknown level");
    const AtomLevel& g = levels_[c.ground];
    const AtomLevel& x = levels_[c.excited];
    if (g.excited || !x.excited)
      throw std::invalid_argument("coupling must connect a ground to an excited level");
    if (g.sink || x.sink) throw std::invalid_argument("sink level cannot carry couplings");
    // Selection rule: mF(excited) = mF(ground) + q.
    if (x.mf != g.mf + polarization_q(c.pol)) {
      std::ostringstream msg;
      msg << "selection-rule violation on coupling " << g.label << " <-> " << x.label
          << " (" << polarization_name(c.pol) << ")";
      throw std::invalid_argument(msg.str());
    }
  }
  // Branching fractions per excited level must sum to 1.
  std::map<int, double> sums;
  for (const auto& d : decay_channels_) {
    if (d.excited < 0 || d.excited >= size() || d.ground < 0 || d.ground >= size())
      throw std::invalid_argument("decay channel references an unknown level");
    if (!levels_[d.excited].excited)
      throw std::invalid_argument("decay channel must start from an excited level");
    if (d.branching < 0.0) throw std::invalid_argument("negative branching fraction");
    sums[d.excited] += d.branching;
  }
  for (const auto& [excited, sum] : sums) {
    if (std::abs(sum - 1.0) > 1e-9) {
      std::ostringstream msg;
      msg << "branching fractions from " << levels_[excited].label << " sum to " << sum;
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace polsim
