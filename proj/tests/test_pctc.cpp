// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "ctcsim/analysis.hpp"
#include "ctcsim/error.hpp"
#include "ctcsim/pctc.hpp"
#include "test_util.hpp"

using namespace ctcsim;
using namespace ctcsim::testutil;

TEST_CASE("pctc operator on the worked circuits") {
  // Distinguishing circuit: P = |0><0| + |1><-|.
  Matrix expected(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  expected << 1, 0, s, -s;
  CHECK(frobenius_distance(pctc_operator(catalog("distinguishing")).mat,
                           expected) < 1e-12);

  // Swap circuit: Tr_CV(SWAP) = 1.
  CHECK(frobenius_distance(pctc_operator(catalog("swap")).mat,
                           Matrix::Identity(2, 2)) < 1e-14);

  // Traceless product interaction: P = 0.
  CHECK(pctc_operator(catalog("traceless_paradox")).mat.norm() == 0.0);

  // Unproven theorem: P |00> = |00> + |11>.
  const Vector p00 =
      pctc_operator(catalog("unproven_theorem")).mat * basis_ket(4, 0);
  CHECK((p00 - (basis_ket(4, 0) + basis_ket(4, 3))).norm() < 1e-12);
}

TEST_CASE("pctc operator agrees with the generic partial trace") {
  Rng rng(51);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 1 + int(rng.next_u64() % 2);
    const int m = 1 + int(rng.next_u64() % 2);
    const StandardFormCircuit circuit = random_circuit(n, m, rng);
    const Matrix u = compile_unitary(circuit).mat;
    CHECK(frobenius_distance(
              pctc_operator(circuit).mat,
              partial_trace(u, circuit.cr_dim(), circuit.cv_dim(),
                            Keep::First)) < 1e-12);
  }
}

TEST_CASE("pctc operator is basis independent") {
  Rng rng(52);
  for (int rep = 0; rep < 10; ++rep) {
    const StandardFormCircuit circuit = random_circuit(1, 2, rng);
    const Matrix u = compile_unitary(circuit).mat;
    const Index dcr = circuit.cr_dim();
    const Index dcv = circuit.cv_dim();
    const Matrix rotation = haar_unitary(dcv, rng);
    // P computed in the rotated basis {V|a>}.
    Matrix rotated = Matrix::Zero(dcr, dcr);
    const Matrix conjugated =
        tensor_product(Matrix::Identity(dcr, dcr), rotation).adjoint() * u *
        tensor_product(Matrix::Identity(dcr, dcr), rotation);
    for (Index r = 0; r < dcr; ++r) {
      for (Index rp = 0; rp < dcr; ++rp) {
        Complex sum = 0.0;
        for (Index a = 0; a < dcv; ++a) {
          sum += conjugated(r * dcv + a, rp * dcv + a);
        }
        rotated(r, rp) = sum;
      }
    }
    CHECK(frobenius_distance(rotated, pctc_operator(circuit).mat) < 1e-10);
  }
}

TEST_CASE("norm bound on the trace operator") {
  Rng rng(53);
  std::vector<StandardFormCircuit> circuits;
  for (const std::string& name : catalog_names()) {
    circuits.push_back(catalog(name));
  }
  circuits.push_back(random_circuit(1, 2, rng));
  circuits.push_back(random_circuit(2, 2, rng));
  for (const StandardFormCircuit& circuit : circuits) {
    const CvTraceOperator p = pctc_operator(circuit);
    const double bound = double(circuit.cv_dim());
    for (int rep = 0; rep < 1000; ++rep) {
      const PureState psi = haar_state(circuit.cr_dim(), rng);
      CHECK((p.mat * psi.amplitudes).norm() <= bound + 1e-12);
    }
  }
}

TEST_CASE("pctc evolution on the worked circuits") {
  // Unproven theorem: output (|00> + |11>)/sqrt(2).
  const TheoryOutcome ut = pctc_evolve(
      catalog("unproven_theorem"), DensityOperator::pure(PureState::basis(4, 0)));
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(frobenius_distance(ut.rho_f.mat, projector(bell)) < 1e-12);
  CHECK(ut.diagnostics.count("pre_normalization_trace") == 1);

  // Distinguishing circuit separates |+> and |1>.
  const TheoryOutcome plus = pctc_evolve(
      catalog("distinguishing"),
      DensityOperator::pure(PureState::normalized(ket_plus())));
  CHECK(frobenius_distance(plus.rho_f.mat, projector(basis_ket(2, 0))) <
        1e-12);
  const TheoryOutcome one = pctc_evolve(
      catalog("distinguishing"), DensityOperator::pure(PureState::basis(2, 1)));
  CHECK(frobenius_distance(one.rho_f.mat, projector(basis_ket(2, 1))) < 1e-12);

  // Traceless interaction: paradox for every input.
  Rng rng(54);
  for (int rep = 0; rep < 5; ++rep) {
    const DensityOperator rho = random_density(2, rng);
    CHECK_THROWS_AS(pctc_evolve(catalog("traceless_paradox"), rho),
                    ParadoxError);
  }
}

TEST_CASE("protocol oracle equals the trace-operator map") {
  Rng rng(55);
  for (const std::string& name : catalog_names()) {
    const StandardFormCircuit circuit = catalog(name);
    const DensityOperator rho =
        DensityOperator::pure(haar_state(circuit.cr_dim(), rng));
    bool direct_paradox = false;
    bool oracle_paradox = false;
    DensityOperator direct = DensityOperator::maximally_mixed(2);
    DensityOperator oracle = DensityOperator::maximally_mixed(2);
    try {
      direct = pctc_evolve(circuit, rho).rho_f;
    } catch (const ParadoxError&) {
      direct_paradox = true;
    }
    try {
      oracle = pctc_protocol_oracle(circuit, rho).rho_f;
    } catch (const ParadoxError&) {
      oracle_paradox = true;
    }
    CHECK(direct_paradox == oracle_paradox);
    if (!direct_paradox) {
      CHECK(trace_distance(direct, oracle) < 1e-10);
    }
  }
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + int(rng.next_u64() % 2);
    const int m = 1 + int(rng.next_u64() % 2);
    const StandardFormCircuit circuit = random_circuit(n, m, rng);
    const DensityOperator rho =
        DensityOperator::pure(haar_state(circuit.cr_dim(), rng));
    CHECK(trace_distance(pctc_evolve(circuit, rho).rho_f,
                         pctc_protocol_oracle(circuit, rho).rho_f) < 1e-10);
  }

  // The swap circuit acts as the identity (P = 1).
  const DensityOperator rho = random_density(2, rng);
  CHECK(frobenius_distance(
            pctc_protocol_oracle(catalog("swap"), rho).rho_f.mat, rho.mat) <
        1e-10);
}

TEST_CASE("noise restores consistency on the paradoxical circuit") {
  const StandardFormCircuit circuit = catalog("traceless_paradox");
  const DensityOperator chi = DensityOperator::maximally_mixed(8);
  const DensityOperator input = DensityOperator::pure(PureState::basis(2, 0));

  const TheoryOutcome coarse = pctc_evolve_noisy(circuit, input, chi, 1e-3);
  const TheoryOutcome fine = pctc_evolve_noisy(circuit, input, chi, 1e-6);
  CHECK(trace_distance(coarse.rho_f, fine.rho_f) < 1e-9);
  CHECK(frobenius_distance(coarse.rho_f.mat, Matrix::Identity(2, 2) / 2.0) <
        1e-9);

  // Vanishing noise on a non-paradoxical circuit recovers pctc_evolve.
  Rng rng(56);
  const StandardFormCircuit dist = catalog("distinguishing");
  const DensityOperator rho = DensityOperator::pure(haar_state(2, rng));
  const TheoryOutcome noisy = pctc_evolve_noisy(dist, rho, chi, 1e-9);
  CHECK(trace_distance(noisy.rho_f, pctc_evolve(dist, rho).rho_f) < 1e-6);

  // chi orthogonal to |Phi> cannot fix the paradox.
  Matrix orth = Matrix::Zero(8, 8);
  orth(1, 1) = 1.0;  // CR |0> (x) BA |01>, orthogonal to |Phi>
  const DensityOperator bad_chi = DensityOperator::validated(orth);
  CHECK_THROWS_AS(pctc_evolve_noisy(circuit, input, bad_chi, 1e-3),
                  ParadoxError);

  // chi must act on the full protocol register.
  CHECK_THROWS_AS(
      pctc_evolve_noisy(circuit, input, DensityOperator::maximally_mixed(4),
                        1e-3),
      ValidationError);
}

TEST_CASE("renormalized evolution is continuous") {
  Rng rng(57);
  const StandardFormCircuit circuit = catalog("distinguishing");
  const DensityOperator rho = DensityOperator::pure(haar_state(2, rng));
  const DensityOperator direction = random_density(2, rng);
  const DensityOperator base = pctc_evolve(circuit, rho).rho_f;
  double previous = 1.0;
  for (double eps : {1e-3, 1e-5, 1e-7}) {
    const Matrix perturbed = (1.0 - eps) * rho.mat + eps * direction.mat;
    const DensityOperator out = pctc_evolve(
        circuit, DensityOperator::validated(perturbed, 1e-8, 1e-8, 1e-8)).rho_f;
    const double dist = trace_distance(out, base);
    CHECK(dist <= previous + 1e-12);
    previous = dist;
  }
  CHECK(previous < 1e-6);
}

TEST_CASE("maximally entangled state") {
  for (int m : {1, 2}) {
    const Vector phi = max_entangled_state(m);
    const Index d = Index(1) << m;
    CHECK(phi.size() == d * d);
    CHECK(std::abs(phi.norm() - 1.0) < 1e-15);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        const Complex want =
            (i == j) ? Complex(1.0 / std::sqrt(double(d)), 0.0) : Complex(0, 0);
        CHECK(std::abs(phi(i * d + j) - want) == 0.0);
      }
    }
  }
}

TEST_CASE("protocol register obeys the qubit cap") {
  setenv("CTC_SIM_MAX_QUBITS", "3", 1);
  const StandardFormCircuit ut = catalog("unproven_theorem");  // n + 2m = 4
  const DensityOperator rho = DensityOperator::pure(PureState::basis(4, 0));
  CHECK_THROWS_AS(pctc_protocol_oracle(ut, rho), ValidationError);
  unsetenv("CTC_SIM_MAX_QUBITS");
  CHECK_NOTHROW(pctc_protocol_oracle(ut, rho));
}
