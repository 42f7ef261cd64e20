// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctcsim/linalg.hpp"

namespace ctcsim {

// Tolerances used by the validated constructors below.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kEntropyEigenvalueFloor = 1e-12;

struct PureState {
  Vector amplitudes;

  Index dim() const { return amplitudes.size(); }

  // Requires the Euclidean norm to equal 1 within tol.
  static PureState normalized(Vector v, double tol = kNormTol);
  static PureState basis(Index dim, Index index);
};

struct DensityOperator {
  Matrix mat;

  Index dim() const { return mat.rows(); }

  // Checks Hermiticity, unit trace, and positive semi-definiteness.
  // Eigenvalues in (-psd_tol, 0) are floored to zero and the matrix is
  // renormalized to unit trace.
  static DensityOperator validated(const Matrix& m,
                                   double hermitian_tol = kHermitianTol,
                                   double trace_tol = kTraceTol,
                                   double psd_tol = kPsdTol);
  static DensityOperator pure(const PureState& psi);
  static DensityOperator maximally_mixed(Index dim);
};

struct UnitaryMatrix {
  Matrix mat;

  Index dim() const { return mat.rows(); }

  // Requires U^dag U = 1 within tol in Frobenius norm.
  static UnitaryMatrix validated(Matrix m, double tol = kUnitaryTol);
};

// Checks all DensityOperator invariants at a single tolerance; the error
// message names the violated invariant.
DensityOperator validate_density(const Matrix& m, double tol = kPsdTol);

// Von Neumann entropy in nats; eigenvalues <= 1e-12 contribute zero.
double von_neumann_entropy(const DensityOperator& rho);

// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)); for pure states this
// is |<a|b>|.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

// Trace distance (1/2) Tr |rho - sigma|.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

double purity(const DensityOperator& rho);

}  // namespace ctcsim
