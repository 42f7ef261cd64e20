// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "ctcsim/circuit.hpp"
#include "ctcsim/outcome.hpp"

namespace ctcsim {

// Default threshold below which Tr(P rho P^dag) counts as a structural
// dynamical-consistency paradox rather than a small physical overlap.
inline constexpr double kParadoxTol = 1e-12;

// P = Tr_CV(U), a generally non-unitary operator on the CR system. Vector
// norms are bounded: ||P psi|| <= 2^m for unit psi.
struct CvTraceOperator {
  Index dim = 0;  // 2^n
  Matrix mat;
};

CvTraceOperator pctc_operator(const StandardFormCircuit& circuit);

// |Phi> = 2^(-m/2) sum_i |i>_B |i>_A on 2m qubits.
Vector max_entangled_state(int m);

// rho_f = P rho_i P^dag / Tr(P rho_i P^dag). Throws ParadoxError when the
// normalizing trace falls below paradox_tol.
TheoryOutcome pctc_evolve(const StandardFormCircuit& circuit,
                          const DensityOperator& rho_i,
                          double paradox_tol = kParadoxTol);

// Independent oracle for pctc_evolve: prepares rho_i (x) |Phi><Phi| on
// CR (x) B (x) A, applies U on CR (x) B, projects onto <Phi| over B (x) A,
// and renormalizes.
TheoryOutcome pctc_protocol_oracle(const StandardFormCircuit& circuit,
                                   const DensityOperator& rho_i,
                                   double paradox_tol = kParadoxTol);

// Protocol evolution with the noise channel N(sigma) = (sigma + eps*chi) /
// (1 + eps) applied before the postselection. chi acts on the full
// CR (x) B (x) A space. For paradoxical inputs the output is
// <Phi|chi|Phi> normalized, independent of eps.
TheoryOutcome pctc_evolve_noisy(const StandardFormCircuit& circuit,
                                const DensityOperator& rho_i,
                                const DensityOperator& chi, double eps,
                                double paradox_tol = kParadoxTol);

}  // namespace ctcsim
