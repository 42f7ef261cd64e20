// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace ctcsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

enum class Keep { First, Second };

// Kronecker product with index convention (iA, iB) -> iA * colsB + iB.
Matrix tensor_product(const Matrix& a, const Matrix& b);
Vector tensor_product(const Vector& a, const Vector& b);

// Partial trace of an (da*db) x (da*db) matrix over one tensor factor.
// Returns da x da for Keep::First, db x db for Keep::Second.
Matrix partial_trace(const Matrix& m, Index da, Index db, Keep keep);

bool is_hermitian(const Matrix& m, double tol);
bool is_unitary(const Matrix& m, double tol);

double frobenius_distance(const Matrix& a, const Matrix& b);

// Computational basis ket |index> in dimension dim.
Vector basis_ket(Index dim, Index index);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();

// Eigenvalues of a Hermitian matrix, ascending. Hermitizes the input first.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

// Positive-semidefinite square root of a Hermitian matrix; negative
// eigenvalues are clamped to zero.
Matrix psd_sqrt(const Matrix& m);

}  // namespace ctcsim
