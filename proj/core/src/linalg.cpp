// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "ctcsim/error.hpp"

namespace ctcsim {

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

Vector tensor_product(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Matrix partial_trace(const Matrix& m, Index da, Index db, Keep keep) {
  if (da <= 0 || db <= 0 || m.rows() != da * db || m.cols() != da * db) {
    throw ValidationError("partial_trace: matrix is not (da*db) x (da*db)");
  }
  if (keep == Keep::First) {
    Matrix out = Matrix::Zero(da, da);
    for (Index i = 0; i < da; ++i) {
      for (Index j = 0; j < da; ++j) {
        for (Index k = 0; k < db; ++k) {
          out(i, j) += m(i * db + k, j * db + k);
        }
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (Index i = 0; i < db; ++i) {
    for (Index j = 0; j < db; ++j) {
      for (Index k = 0; k < da; ++k) {
        out(i, j) += m(k * db + i, k * db + j);
      }
    }
  }
  return out;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix gram = m.adjoint() * m;
  return (gram - Matrix::Identity(m.rows(), m.cols())).norm() <= tol;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  return (a - b).norm();
}

Vector basis_ket(Index dim, Index index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()),
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian eigensolver failed");
  }
  return solver.eigenvalues();
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian eigensolver failed");
  }
  Eigen::VectorXd evals = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * evals.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace ctcsim
