#pragma once

#include "polsim/cavity.hpp"
#include "polsim/level_scheme.hpp"

namespace polsim {

struct BasisState {
  int atom = 0;
  int n_plus = 0;
  int n_minus = 0;
};

// Composite Hilbert space atom (x) cavity sigma+ (x) cavity sigma-.
// Flat index ordering: atom slowest, then sigma+ Fock, then sigma- Fock.
class CompositeSpace {
 public:
  CompositeSpace(int n_atom_levels, int n_max);

  int atom_levels() const { return n_atom_levels_; }
  int n_max() const { return n_max_; }
  int fock_dim() const { return n_max_ + 1; }
  int dimension() const { return n_atom_levels_ * fock_dim() * fock_dim(); }

  int index(int atom, int n_plus, int n_minus) const {
    return (atom * fock_dim() + n_plus) * fock_dim() + n_minus;
  }
  int index(const BasisState& s) const { return index(s.atom, s.n_plus, s.n_minus); }

  BasisState basis_state(int flat) const {
    BasisState s;
    s.n_minus = flat % fock_dim();
    flat /= fock_dim();
    s.n_plus = flat % fock_dim();
    s.atom = flat / fock_dim();
    return s;
  }

 private:
  int n_atom_levels_;
  int n_max_;
};

CompositeSpace build_space(const LevelScheme& scheme, const CavityConfig& cavity);

}  // namespace polsim
