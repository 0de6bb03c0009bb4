#pragma once

#include <string>
#include <vector>

#include "polsim/cavity.hpp"
#include "polsim/operators.hpp"

namespace polsim {

enum class ChannelKind { MirrorOutput, CavityLoss, FreeSpaceDecay };

struct CollapseChannel {
  SparseOp op;
  ChannelKind kind = ChannelKind::FreeSpaceDecay;
  Polarization pol = Polarization::Pi;  // circular for cavity channels
  std::string label;

  bool is_mirror(Polarization p) const {
    return kind == ChannelKind::MirrorOutput && pol == p;
  }
};

// Collapse operators of the Lindblad equation: sqrt(2 kappa_out) a_q and
// sqrt(2 kappa_loss) a_q per polarization, plus sqrt(2 gamma b_ch) |g><x|
// per spontaneous-decay channel. gamma is the atomic field decay rate, so
// the total spontaneous rate per excited level is 2 gamma.
std::vector<CollapseChannel> collapse_operators(const CompositeSpace& space,
                                                const LevelScheme& scheme,
                                                const CavityConfig& cavity, double gamma);

// sum_k C_k^dag C_k, the decay part of the effective Hamiltonian.
SparseOp collapse_rate_sum(const std::vector<CollapseChannel>& channels);

}  // namespace polsim
