#include "polsim/collapse.hpp"

#include <cmath>
#include <stdexcept>

namespace polsim {

std::vector<CollapseChannel> collapse_operators(const CompositeSpace& space,
                                                const LevelScheme& scheme,
                                                const CavityConfig& cavity, double gamma) {
  cavity.validate();
  if (gamma < 0.0) throw std::invalid_argument("gamma must be nonnegative");

  std::vector<CollapseChannel> channels;
  const double k_out = cavity.kappa_out();
  const double k_loss = cavity.kappa_loss();

  for (Polarization pol : {Polarization::SigmaPlus, Polarization::SigmaMinus}) {
    const char sign = pol == Polarization::SigmaPlus ? '+' : '-';
    if (k_out > 0.0) {
      CollapseChannel ch;
      ch.op = std::sqrt(2.0 * k_out) * annihilator(space, pol);
      ch.kind = ChannelKind::MirrorOutput;
      ch.pol = pol;
      ch.label = std::string("out") + sign;
      channels.push_back(std::move(ch));
    }
    if (k_loss > 0.0) {
      CollapseChannel ch;
      ch.op = std::sqrt(2.0 * k_loss) * annihilator(space, pol);
      ch.kind = ChannelKind::CavityLoss;
      ch.pol = pol;
      ch.label = std::string("loss") + sign;
      channels.push_back(std::move(ch));
    }
  }

  if (gamma > 0.0) {
    for (const auto& d : scheme.decay_channels()) {
      if (d.branching == 0.0) continue;
      CollapseChannel ch;
      ch.op = std::sqrt(2.0 * gamma * d.branching) * atomic_transition(space, d.ground, d.excited);
      ch.kind = ChannelKind::FreeSpaceDecay;
      ch.label = "sp:" + scheme.level(d.excited).label + ">" + scheme.level(d.ground).label;
      channels.push_back(std::move(ch));
    }
  }
  return channels;
}

SparseOp collapse_rate_sum(const std::vector<CollapseChannel>& channels) {
  if (channels.empty()) return SparseOp(0, 0);
  const int dim = static_cast<int>(channels.front().op.rows());
  SparseOp sum(dim, dim);
  for (const auto& ch : channels) sum = sum + SparseOp(SparseOp(ch.op.adjoint()) * ch.op);
  sum.makeCompressed();
  return sum;
}

}  // namespace polsim
