// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/pctc.hpp"

#include <cmath>
#include <sstream>

#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

// <Phi| state |Phi> contracted over the trailing B (x) A factor.
Matrix project_entangled_pair(const Matrix& state, Index dim_keep,
                              const Vector& phi) {
  const Matrix k = tensor_product(Matrix::Identity(dim_keep, dim_keep),
                                  Matrix(phi));
  return k.adjoint() * state * k;
}

TheoryOutcome finalize(Matrix raw, double paradox_tol, const char* what) {
  const double trace = raw.trace().real();
  if (trace < paradox_tol) {
    std::ostringstream msg;
    msg << what << ": dynamical consistency paradox (postselection trace "
        << trace << ")";
    throw ParadoxError(msg.str(), trace);
  }
  TheoryOutcome outcome{
      DensityOperator::validated(raw / trace, 1e-9, 1e-9, 1e-9),
      {}, trace, {}, {}};
  outcome.diagnostics["pre_normalization_trace"] = trace;
  return outcome;
}

void check_protocol_size(const StandardFormCircuit& circuit) {
  if (circuit.n + 2 * circuit.m > max_qubits()) {
    throw ValidationError(
        "protocol register n + 2m exceeds the configured qubit cap");
  }
}

}  // namespace

CvTraceOperator pctc_operator(const StandardFormCircuit& circuit) {
  const UnitaryMatrix u = compile_unitary(circuit);
  const Index dcr = circuit.cr_dim();
  const Index dcv = circuit.cv_dim();
  Matrix p = Matrix::Zero(dcr, dcr);
  for (Index r = 0; r < dcr; ++r) {
    for (Index rp = 0; rp < dcr; ++rp) {
      Complex sum = 0.0;
      for (Index a = 0; a < dcv; ++a) {
        sum += u.mat(r * dcv + a, rp * dcv + a);
      }
      p(r, rp) = sum;
    }
  }
  return CvTraceOperator{dcr, std::move(p)};
}

Vector max_entangled_state(int m) {
  const Index d = Index(1) << m;
  Vector phi = Vector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(double(d));
  for (Index i = 0; i < d; ++i) {
    phi(i * d + i) = amp;
  }
  return phi;
}

TheoryOutcome pctc_evolve(const StandardFormCircuit& circuit,
                          const DensityOperator& rho_i, double paradox_tol) {
  if (rho_i.dim() != circuit.cr_dim()) {
    throw ValidationError("pctc_evolve: rho_i must act on the CR qubits");
  }
  const CvTraceOperator p = pctc_operator(circuit);
  return finalize(p.mat * rho_i.mat * p.mat.adjoint(), paradox_tol,
                  "pctc_evolve");
}

TheoryOutcome pctc_protocol_oracle(const StandardFormCircuit& circuit,
                                   const DensityOperator& rho_i,
                                   double paradox_tol) {
  if (rho_i.dim() != circuit.cr_dim()) {
    throw ValidationError("pctc_protocol_oracle: rho_i must act on the CR qubits");
  }
  check_protocol_size(circuit);
  const UnitaryMatrix u = compile_unitary(circuit);
  const Vector phi = max_entangled_state(circuit.m);
  const Matrix u_ext = tensor_product(
      u.mat, Matrix::Identity(circuit.cv_dim(), circuit.cv_dim()));
  const Matrix state = u_ext *
                       tensor_product(rho_i.mat, Matrix(phi * phi.adjoint())) *
                       u_ext.adjoint();
  return finalize(project_entangled_pair(state, circuit.cr_dim(), phi),
                  paradox_tol, "pctc_protocol_oracle");
}

TheoryOutcome pctc_evolve_noisy(const StandardFormCircuit& circuit,
                                const DensityOperator& rho_i,
                                const DensityOperator& chi, double eps,
                                double paradox_tol) {
  if (rho_i.dim() != circuit.cr_dim()) {
    throw ValidationError("pctc_evolve_noisy: rho_i must act on the CR qubits");
  }
  check_protocol_size(circuit);
  const Index protocol_dim = circuit.cr_dim() * circuit.cv_dim() *
                             circuit.cv_dim();
  if (chi.dim() != protocol_dim) {
    throw ValidationError(
        "pctc_evolve_noisy: chi must act on the full CR (x) B (x) A space");
  }
  if (!(eps > 0.0)) {
    throw ValidationError("pctc_evolve_noisy: eps must be positive");
  }
  const UnitaryMatrix u = compile_unitary(circuit);
  const Vector phi = max_entangled_state(circuit.m);
  const Matrix u_ext = tensor_product(
      u.mat, Matrix::Identity(circuit.cv_dim(), circuit.cv_dim()));
  const Matrix sigma = u_ext *
                       tensor_product(rho_i.mat, Matrix(phi * phi.adjoint())) *
                       u_ext.adjoint();
  const Matrix noisy = (sigma + eps * chi.mat) / (1.0 + eps);
  TheoryOutcome outcome = finalize(
      project_entangled_pair(noisy, circuit.cr_dim(), phi), paradox_tol,
      "pctc_evolve_noisy");
  outcome.diagnostics["eps"] = eps;
  return outcome;
}

}  // namespace ctcsim
