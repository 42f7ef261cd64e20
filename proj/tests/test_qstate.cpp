// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "ctcsim/error.hpp"
#include "ctcsim/rng.hpp"
#include "ctcsim/states.hpp"
#include "test_util.hpp"

using namespace ctcsim;
using namespace ctcsim::testutil;

TEST_CASE("tensor product basics") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(frobenius_distance(tensor_product(i2, i2), Matrix::Identity(4, 4)) ==
        0.0);

  const Matrix p0 = projector(basis_ket(2, 0));
  const Matrix p1 = projector(basis_ket(2, 1));
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;  // |01><01| in the big-endian basis
  CHECK(frobenius_distance(tensor_product(p0, p1), expected) == 0.0);

  const Matrix xx = tensor_product(pauli_x(), pauli_x());
  const Vector v00 = tensor_product(basis_ket(2, 0), basis_ket(2, 0));
  const Vector v11 = tensor_product(basis_ket(2, 1), basis_ket(2, 1));
  CHECK((xx * v00 - v11).norm() == 0.0);
}

TEST_CASE("partial trace recovers tensor factors") {
  Rng rng(11);
  for (Index da : {2, 3, 4, 8}) {
    for (Index db : {2, 4, 8}) {
      const Matrix rho = random_density(da, rng).mat;
      const Matrix sigma = random_density(db, rng).mat;
      const Matrix joint = tensor_product(rho, sigma);
      CHECK(frobenius_distance(partial_trace(joint, da, db, Keep::First),
                               rho * sigma.trace()) < 1e-12);
      CHECK(frobenius_distance(partial_trace(joint, da, db, Keep::Second),
                               sigma * rho.trace()) < 1e-12);
    }
  }
}

TEST_CASE("partial trace special values and trace preservation") {
  // Tr_2(SWAP) = 1 on two qubits.
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  CHECK(frobenius_distance(partial_trace(swap, 2, 2, Keep::First),
                           Matrix::Identity(2, 2)) == 0.0);

  // Tr_1 of the Bell projector is 1/2.
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(frobenius_distance(partial_trace(projector(bell), 2, 2, Keep::Second),
                           Matrix::Identity(2, 2) / 2.0) < 1e-15);

  Rng rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix m(6, 6);
    for (Index i = 0; i < 6; ++i) {
      for (Index j = 0; j < 6; ++j) m(i, j) = rng.complex_gauss();
    }
    for (Keep keep : {Keep::First, Keep::Second}) {
      const Matrix reduced = partial_trace(m, 2, 3, keep);
      CHECK(std::abs(reduced.trace() - m.trace()) < 1e-12);
      CHECK(frobenius_distance(
                reduced, partial_trace_oracle(m, 2, 3, keep == Keep::First)) <
            1e-12);
    }
  }

  CHECK_THROWS_AS(partial_trace(swap, 3, 2, Keep::First), ValidationError);
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(DensityOperator::pure(PureState::basis(4, 2))) ==
        0.0);
  CHECK(von_neumann_entropy(DensityOperator::maximally_mixed(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.75;
  diag(1, 1) = 0.25;
  CHECK(von_neumann_entropy(DensityOperator::validated(diag)) ==
        doctest::Approx(0.5623351446188083).epsilon(1e-12));
}

TEST_CASE("entropy is invariant under unitary conjugation") {
  Rng rng(13);
  for (Index d : {2, 4, 8}) {
    const DensityOperator rho = random_density(d, rng);
    const Matrix u = haar_unitary(d, rng);
    const DensityOperator rotated =
        DensityOperator::validated(u * rho.mat * u.adjoint(), 1e-8, 1e-8, 1e-8);
    CHECK(std::abs(von_neumann_entropy(rho) - von_neumann_entropy(rotated)) <
          1e-9);
  }
}

TEST_CASE("fidelity") {
  Rng rng(14);
  const DensityOperator rho = random_density(4, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

  const DensityOperator zero = DensityOperator::pure(PureState::basis(2, 0));
  const DensityOperator one = DensityOperator::pure(PureState::basis(2, 1));
  CHECK(fidelity(zero, one) < 1e-12);

  const DensityOperator plus =
      DensityOperator::pure(PureState::normalized(ket_plus()));
  CHECK(fidelity(zero, plus) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

  // For pure states the fidelity is |<a|b>|; symmetry on mixed pairs.
  for (int rep = 0; rep < 10; ++rep) {
    const PureState a = haar_state(4, rng);
    const PureState b = haar_state(4, rng);
    const double overlap = std::abs(a.amplitudes.dot(b.amplitudes));
    CHECK(fidelity(DensityOperator::pure(a), DensityOperator::pure(b)) ==
          doctest::Approx(overlap).epsilon(1e-8));
    const DensityOperator r1 = random_density(4, rng);
    const DensityOperator r2 = random_density(4, rng);
    CHECK(fidelity(r1, r2) == doctest::Approx(fidelity(r2, r1)).epsilon(1e-9));
  }
}

TEST_CASE("trace distance") {
  Rng rng(15);
  const DensityOperator rho = random_density(4, rng);
  CHECK(trace_distance(rho, rho) == 0.0);

  const DensityOperator zero = DensityOperator::pure(PureState::basis(2, 0));
  const DensityOperator one = DensityOperator::pure(PureState::basis(2, 1));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));

  const DensityOperator plus =
      DensityOperator::pure(PureState::normalized(ket_plus()));
  CHECK(trace_distance(zero, plus) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("trace distance is bounded by fidelity") {
  Rng rng(16);
  for (int rep = 0; rep < 50; ++rep) {
    const DensityOperator a = random_density(4, rng);
    const DensityOperator b = random_density(4, rng);
    const double d = trace_distance(a, b);
    const double f = fidelity(a, b);
    CHECK(d <= std::sqrt(1.0 - f * f) + 1e-9);
  }
}

TEST_CASE("density validation") {
  CHECK_NOTHROW(validate_density(Matrix::Identity(2, 2) / 2.0, 1e-9));

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_WITH_AS(validate_density(negative, 1e-9),
                       doctest::Contains("PSD"), ValidationError);

  Matrix floorable = Matrix::Zero(2, 2);
  floorable(0, 0) = 1.0 + 1e-11;
  floorable(1, 1) = -1e-11;
  const DensityOperator fixed = validate_density(floorable, 1e-9);
  CHECK(hermitian_eigenvalues(fixed.mat).minCoeff() >= 0.0);
  CHECK(std::abs(fixed.mat.trace().real() - 1.0) < 1e-12);

  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 0) = skew(1, 1) = 0.5;
  skew(0, 1) = 0.3;
  CHECK_THROWS_WITH_AS(validate_density(skew, 1e-9),
                       doctest::Contains("hermiticity"), ValidationError);

  CHECK_THROWS_WITH_AS(validate_density(Matrix::Identity(2, 2) * 0.45, 1e-9),
                       doctest::Contains("trace"), ValidationError);
}

TEST_CASE("pure state and unitary validation") {
  Vector bad(2);
  bad << 1.0, 0.5;
  CHECK_THROWS_AS(PureState::normalized(bad), ValidationError);
  CHECK_NOTHROW(PureState::normalized(ket_minus()));

  Matrix not_unitary = Matrix::Identity(2, 2) * 1.5;
  CHECK_THROWS_AS(UnitaryMatrix::validated(not_unitary), ValidationError);
  CHECK_NOTHROW(UnitaryMatrix::validated(hadamard()));
}
