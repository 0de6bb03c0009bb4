#include "polsim/space.hpp"

#include <stdexcept>

namespace polsim {

CompositeSpace::CompositeSpace(int n_atom_levels, int n_max)
    : n_atom_levels_(n_atom_levels), n_max_(n_max) {
  if (n_atom_levels < 1) throw std::invalid_argument("need at least one atomic level");
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
}

CompositeSpace build_space(const LevelScheme& scheme, const CavityConfig& cavity) {
  cavity.validate();
  return CompositeSpace(scheme.size(), cavity.n_max);
}

}  // namespace polsim
