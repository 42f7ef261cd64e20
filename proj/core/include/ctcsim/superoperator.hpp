// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ctcsim/linalg.hpp"

namespace ctcsim {

// Column-stacking vectorization: vec(X) stacks the columns of X, so that
// vec(A X B) = (B^T (x) A) vec(X).
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Index dim);

// Matrix representation of a linear map on dim x dim operators.
struct Superoperator {
  Index dim = 0;  // operator-space dimension: the map acts on dim x dim
  Matrix mat;     // dim^2 x dim^2 in column-stacking vectorization

  Matrix apply(const Matrix& x) const;

  // Validates trace preservation (vec(1) is a left fixed vector) and
  // Hermiticity preservation on a Hermitian operator basis.
  static Superoperator from_matrix(Index dim, Matrix mat, double tol = 1e-9);
  static Superoperator from_kraus(Index dim, const std::vector<Matrix>& kraus,
                                  double tol = 1e-9);

  bool is_trace_preserving(double tol = 1e-9) const;
  bool is_hermiticity_preserving(double tol = 1e-9) const;
};

}  // namespace ctcsim
