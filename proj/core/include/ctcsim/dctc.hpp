// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "ctcsim/circuit.hpp"
#include "ctcsim/outcome.hpp"
#include "ctcsim/superoperator.hpp"

namespace ctcsim {

// Fixed points of a consistency channel: the affine family
// representative + sum_j c_j * directions[j], c real, intersected with the
// positive semi-definite cone.
struct FixedPointSet {
  DensityOperator representative;
  std::vector<Matrix> directions;  // traceless Hermitian, orthonormal (HS)
  int subspace_dim = 1;            // dimension of the fixed operator subspace
};

// How a D-CTC run selects tau from the fixed-point family.
struct DctcRule {
  enum class Kind { MaxEntropy, Representative, Noise };
  Kind kind = Kind::MaxEntropy;
  double noise = 0.0;

  static DctcRule max_entropy() { return {Kind::MaxEntropy, 0.0}; }
  static DctcRule representative() { return {Kind::Representative, 0.0}; }
  static DctcRule noise_rule(double p) { return {Kind::Noise, p}; }
};

enum class Weighting { Uniform, Transition };

// Superoperator of tau -> Tr_CR[U (rho_i (x) tau) U^dag] acting on the
// 2^m-dimensional CV operators. Completely positive by construction.
Superoperator consistency_channel(const StandardFormCircuit& circuit,
                                  const DensityOperator& rho_i);

// Eigenvalue-1 eigenspace of the channel, intersected with the Hermitian
// operators. The representative is the Cesaro mean of the orbit of the
// maximally mixed state.
FixedPointSet fixed_point_set(const Superoperator& channel,
                              double eigenvalue_window = 1e-8);

// The unique entropy maximizer over the PSD slice of the fixed family,
// found by gradient ascent with backtracking; the first-order optimality
// residual of the result is below 1e-7.
DensityOperator max_entropy_fixed_point(const FixedPointSet& fps);

// Solves tau = (p/dim) 1 + (1-p) S(tau). Throws DegeneracyError if the
// linear system is singular, i.e. 1/(1-p) is an eigenvalue of S.
DensityOperator noisy_fixed_point(const Superoperator& channel, double p);

TheoryOutcome dctc_evolve(const StandardFormCircuit& circuit,
                          const DensityOperator& rho_i, const DctcRule& rule);

struct IterationReport {
  enum class Verdict { Converged, Cycle, NoVerdict };
  Verdict verdict = Verdict::NoVerdict;
  int period = 0;        // for Verdict::Cycle
  int converged_at = 0;  // index of the first state of the matched pair
  std::vector<Matrix> trajectory;  // sigma_0 ... sigma_N
  std::optional<DensityOperator> limit;
};

// Plain iteration sigma_N = S^N(sigma_0) with convergence and cycle
// detection (periods up to 16) by Frobenius distance.
IterationReport iterate_channel(const Superoperator& channel,
                                const DensityOperator& sigma0, int max_iter,
                                double tol);

// tau = integral of w(tau_c) tau_c over the PSD coefficient polytope of the
// fixed family, by uniform grid quadrature; then rho_f as usual. Supports
// at most two family directions.
TheoryOutcome weighted_dctc_evolve(const StandardFormCircuit& circuit,
                                   const DensityOperator& rho_i,
                                   Weighting weighting, int grid_points = 101);

// rho_f = Tr_CV[U (rho_i (x) tau) U^dag].
DensityOperator dctc_output_state(const StandardFormCircuit& circuit,
                                  const DensityOperator& rho_i,
                                  const DensityOperator& tau);

}  // namespace ctcsim
