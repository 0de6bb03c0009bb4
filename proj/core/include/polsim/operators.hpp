#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "polsim/space.hpp"

namespace polsim {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Annihilation operator of one cavity polarization mode on the composite
// space (identity on the atom and the other mode).
SparseOp annihilator(const CompositeSpace& space, Polarization pol);

// |to><from| on the atomic factor, identity on both modes.
SparseOp atomic_transition(const CompositeSpace& space, int to, int from);

SparseOp atomic_projector(const CompositeSpace& space, int level);

// Photon number operator of one mode.
SparseOp number_operator(const CompositeSpace& space, Polarization pol);

// max |A - A^dag| over entries, used by the Hermiticity checks.
double hermiticity_defect(const SparseOp& op);
double max_abs(const SparseOp& op);

// tr(op * rho), summed over the sparse entries of op.
Complex expectation(const SparseOp& op, const Matrix& rho);

inline Complex expectation(const SparseOp& op, const Vector& psi) {
  return psi.dot(op * psi);
}

}  // namespace polsim
