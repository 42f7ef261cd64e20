// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/superoperator.hpp"

#include "ctcsim/error.hpp"

namespace ctcsim {

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, Index dim) {
  if (v.size() != dim * dim) {
    throw ValidationError("unvec: vector length is not dim^2");
  }
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix Superoperator::apply(const Matrix& x) const {
  if (x.rows() != dim || x.cols() != dim) {
    throw ValidationError("superoperator: operand dimension mismatch");
  }
  return unvec(mat * vec(x), dim);
}

bool Superoperator::is_trace_preserving(double tol) const {
  const Vector id = vec(Matrix::Identity(dim, dim));
  return (mat.adjoint() * id - id).cwiseAbs().maxCoeff() <= tol;
}

bool Superoperator::is_hermiticity_preserving(double tol) const {
  // Hermitian basis: E_ii, (E_ij + E_ji), i(E_ij - E_ji).
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i; j < dim; ++j) {
      Matrix h = Matrix::Zero(dim, dim);
      if (i == j) {
        h(i, i) = 1.0;
        if (!is_hermitian(apply(h), tol)) return false;
        continue;
      }
      h(i, j) = 1.0;
      h(j, i) = 1.0;
      if (!is_hermitian(apply(h), tol)) return false;
      h(i, j) = Complex(0, 1);
      h(j, i) = Complex(0, -1);
      if (!is_hermitian(apply(h), tol)) return false;
    }
  }
  return true;
}

Superoperator Superoperator::from_matrix(Index dim, Matrix mat, double tol) {
  if (dim < 1 || mat.rows() != dim * dim || mat.cols() != dim * dim) {
    throw ValidationError("superoperator: matrix is not dim^2 x dim^2");
  }
  Superoperator s{dim, std::move(mat)};
  if (!s.is_trace_preserving(tol)) {
    throw ValidationError("superoperator: not trace preserving");
  }
  if (!s.is_hermiticity_preserving(tol)) {
    throw ValidationError("superoperator: not hermiticity preserving");
  }
  return s;
}

Superoperator Superoperator::from_kraus(Index dim,
                                        const std::vector<Matrix>& kraus,
                                        double tol) {
  Matrix mat = Matrix::Zero(dim * dim, dim * dim);
  for (const Matrix& k : kraus) {
    if (k.rows() != dim || k.cols() != dim) {
      throw ValidationError("superoperator: Kraus operator dimension mismatch");
    }
    mat += tensor_product(k.conjugate(), k);
  }
  return from_matrix(dim, std::move(mat), tol);
}

}  // namespace ctcsim
