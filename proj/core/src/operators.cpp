#include "polsim/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace polsim {

namespace {
using Triplet = Eigen::Triplet<Complex>;

SparseOp from_triplets(int dim, const std::vector<Triplet>& triplets) {
  SparseOp op(dim, dim);
  op.setFromTriplets(triplets.begin(), triplets.end());
  op.makeCompressed();
  return op;
}
}  // namespace

SparseOp annihilator(const CompositeSpace& space, Polarization pol) {
  if (pol == Polarization::Pi)
    throw std::invalid_argument("the cavity supports only circular modes");
  const bool plus = pol == Polarization::SigmaPlus;
  std::vector<Triplet> triplets;
  for (int a = 0; a < space.atom_levels(); ++a) {
    for (int np = 0; np < space.fock_dim(); ++np) {
      for (int nm = 0; nm < space.fock_dim(); ++nm) {
        if (plus && np + 1 < space.fock_dim()) {
          triplets.emplace_back(space.index(a, np, nm), space.index(a, np + 1, nm),
                                std::sqrt(double(np + 1)));
        } else if (!plus && nm + 1 < space.fock_dim()) {
          triplets.emplace_back(space.index(a, np, nm), space.index(a, np, nm + 1),
                                std::sqrt(double(nm + 1)));
        }
      }
    }
  }
  return from_triplets(space.dimension(), triplets);
}

SparseOp atomic_transition(const CompositeSpace& space, int to, int from) {
  std::vector<Triplet> triplets;
  for (int np = 0; np < space.fock_dim(); ++np)
    for (int nm = 0; nm < space.fock_dim(); ++nm)
      triplets.emplace_back(space.index(to, np, nm), space.index(from, np, nm), 1.0);
  return from_triplets(space.dimension(), triplets);
}

SparseOp atomic_projector(const CompositeSpace& space, int level) {
  return atomic_transition(space, level, level);
}

SparseOp number_operator(const CompositeSpace& space, Polarization pol) {
  const bool plus = pol == Polarization::SigmaPlus;
  std::vector<Triplet> triplets;
  for (int a = 0; a < space.atom_levels(); ++a)
    for (int np = 0; np < space.fock_dim(); ++np)
      for (int nm = 0; nm < space.fock_dim(); ++nm) {
        const double n = plus ? np : nm;
        if (n > 0) triplets.emplace_back(space.index(a, np, nm), space.index(a, np, nm), n);
      }
  return from_triplets(space.dimension(), triplets);
}

double hermiticity_defect(const SparseOp& op) {
  SparseOp diff = SparseOp(op - SparseOp(op.adjoint()));
  return max_abs(diff);
}

double max_abs(const SparseOp& op) {
  double m = 0.0;
  for (int k = 0; k < op.outerSize(); ++k)
    for (SparseOp::InnerIterator it(op, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

Complex expectation(const SparseOp& op, const Matrix& rho) {
  Complex sum = 0.0;
  for (int k = 0; k < op.outerSize(); ++k)
    for (SparseOp::InnerIterator it(op, k); it; ++it)
      sum += it.value() * rho(it.col(), it.row());
  return sum;
}

}  // namespace polsim
