// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/states.hpp"

#include <cmath>
#include <sstream>

#include "ctcsim/error.hpp"

namespace ctcsim {

PureState PureState::normalized(Vector v, double tol) {
  if (v.size() < 1) {
    throw ValidationError("pure state: empty amplitude vector");
  }
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream msg;
    msg << "pure state: norm " << norm << " differs from 1 by more than "
        << tol;
    throw ValidationError(msg.str());
  }
  v /= norm;
  return PureState{std::move(v)};
}

PureState PureState::basis(Index dim, Index index) {
  return PureState{basis_ket(dim, index)};
}

DensityOperator DensityOperator::validated(const Matrix& m,
                                           double hermitian_tol,
                                           double trace_tol, double psd_tol) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw ValidationError("density operator: matrix is not square");
  }
  if (!is_hermitian(m, hermitian_tol)) {
    throw ValidationError("density operator: hermiticity violation");
  }
  const double tr = m.trace().real();
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > trace_tol) {
    std::ostringstream msg;
    msg << "density operator: trace violation (trace " << tr << ")";
    throw ValidationError(msg.str());
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw Error("density operator: eigensolver failure");
  }
  const Eigen::VectorXd evals = solver.eigenvalues();
  if (evals(0) < -psd_tol) {
    std::ostringstream msg;
    msg << "density operator: PSD violation (eigenvalue " << evals(0) << ")";
    throw ValidationError(msg.str());
  }
  if (evals(0) >= 0.0) {
    return DensityOperator{m};
  }
  // Floor the in-tolerance negative part and renormalize.
  Eigen::VectorXd floored = evals.cwiseMax(0.0);
  Matrix fixed = solver.eigenvectors() * floored.asDiagonal() *
                 solver.eigenvectors().adjoint();
  fixed /= fixed.trace().real();
  return DensityOperator{std::move(fixed)};
}

DensityOperator DensityOperator::pure(const PureState& psi) {
  return DensityOperator{psi.amplitudes * psi.amplitudes.adjoint()};
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
  return DensityOperator{Matrix::Identity(dim, dim) / double(dim)};
}

UnitaryMatrix UnitaryMatrix::validated(Matrix m, double tol) {
  if (!is_unitary(m, tol)) {
    throw ValidationError("unitary matrix: U^dag U differs from identity");
  }
  return UnitaryMatrix{std::move(m)};
}

DensityOperator validate_density(const Matrix& m, double tol) {
  return DensityOperator::validated(m, tol, tol, tol);
}

double von_neumann_entropy(const DensityOperator& rho) {
  const Eigen::VectorXd evals = hermitian_eigenvalues(rho.mat);
  double s = 0.0;
  for (Index i = 0; i < evals.size(); ++i) {
    if (evals(i) > kEntropyEigenvalueFloor) {
      s -= evals(i) * std::log(evals(i));
    }
  }
  return std::max(s, 0.0);
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ValidationError("fidelity: dimension mismatch");
  }
  const Matrix root = psd_sqrt(rho.mat);
  Eigen::VectorXd evals =
      hermitian_eigenvalues(root * sigma.mat * root).cwiseMax(0.0);
  // Rounding leaves O(eps) junk in the small eigenvalues which the square
  // root would inflate to O(sqrt(eps)); floor it.
  evals = (evals.array() < 1e-14).select(0.0, evals);
  const double f = evals.cwiseSqrt().sum();
  return std::min(f, 1.0);
}

double trace_distance(const DensityOperator& rho,
                      const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ValidationError("trace_distance: dimension mismatch");
  }
  const Eigen::VectorXd evals = hermitian_eigenvalues(rho.mat - sigma.mat);
  return 0.5 * evals.cwiseAbs().sum();
}

double purity(const DensityOperator& rho) {
  return (rho.mat * rho.mat).trace().real();
}

}  // namespace ctcsim
