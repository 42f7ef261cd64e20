// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "ctcsim/circuit.hpp"
#include "ctcsim/outcome.hpp"
#include "ctcsim/rng.hpp"

namespace ctcsim {

// Angle coordinates on the pure states of a d-dimensional system:
// theta_a in [0, pi/2] and phi_a in [0, 2 pi) for a = 1..d-1.
struct HurwitzPoint {
  std::vector<double> thetas;
  std::vector<double> phis;

  Index dim() const { return Index(thetas.size()) + 1; }
};

// The state with amplitudes
//   <0|phi>   = prod_{b>=1} sin(theta_b)
//   <a|phi>   = e^{i phi_a} cos(theta_a) prod_{b>a} sin(theta_b).
PureState hurwitz_state(const HurwitzPoint& point);

// Draws angles from the invariant density
// prod_a cos(theta_a) sin(theta_a)^(2a-1) d theta_a d phi_a; cross-check for
// the Gaussian sampler in rng.hpp.
HurwitzPoint hurwitz_sample(Index dim, Rng& rng);

enum class CvSampler { Gaussian, Hurwitz };

PureState sample_cv_state(Index dim, Rng& rng, CvSampler sampler);

// Monte-Carlo matrix estimate. The mean is normalized to unit trace; the
// std error is the root-sum-square of per-entry standard errors, scaled by
// the same normalization.
struct MCEstimate {
  Matrix mean;
  double std_error = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

struct ScalarEstimate {
  Complex mean;
  double std_error = 0.0;
  long long samples = 0;
};

// Monte-Carlo estimate of the moment integral
//   I_(ab)(gd) = integral d[phi] <phi|a><b|phi><phi|d><g|phi>
// over the invariant measure on pure states.
ScalarEstimate moment_integral(Index dim, int a, int b, int g, int d,
                               long long samples, std::uint64_t seed,
                               CvSampler sampler = CvSampler::Gaussian);

// Second moment E |<phi|a>|^2 (equals 1/dim).
ScalarEstimate second_moment(Index dim, long long samples, std::uint64_t seed,
                             CvSampler sampler = CvSampler::Gaussian);

struct MomentReport {
  Index dim = 2;
  ScalarEstimate i_abab;   // I_(01)(01)
  ScalarEstimate i_aabb;   // I_(00)(11)
  ScalarEstimate i_aaaa;   // I_(00)(00)
  ScalarEstimate mixed;    // I_(01)(00), integrates to zero
  ScalarEstimate second;   // E |<phi|0>|^2
  double ratio = 0.0;      // i_aaaa / i_abab, equals 2
  double ratio_std_error = 0.0;
};

// Estimates every moment class from an independent substream of the seed.
MomentReport moment_integrals(Index dim, long long samples, std::uint64_t seed,
                              CvSampler sampler = CvSampler::Gaussian);

// Closed-form equation of motion:
//   rho_f = z^-1 ( P|psi><psi|P^dag + d Tr_CV[U (|psi><psi| (x) 1/d) U^dag] )
// with d = 2^m. Always defined; diagnostics carry lambda = d/(d+||P psi||^2).
TheoryOutcome tctc_evolve(const StandardFormCircuit& circuit,
                          const PureState& psi_i);

// Mixed input handled by purification with a minimal ancilla (rank of
// rho_i), the interaction extended by identity on the ancilla.
TheoryOutcome tctc_evolve_density(const StandardFormCircuit& circuit,
                                  const DensityOperator& rho_i);

// Monte-Carlo oracle for tctc_evolve: samples phi from the invariant
// measure and averages U_phi |psi><psi| U_phi^dag with U_phi = <phi|U|phi>.
// Results are bit-identical for a given (seed, samples) regardless of the
// worker count.
MCEstimate tctc_evolve_mc(const StandardFormCircuit& circuit,
                          const PureState& psi_i, long long samples,
                          std::uint64_t seed, int workers = 1,
                          CvSampler sampler = CvSampler::Gaussian);

// Partial-trace transition theory:
//   rho_f = Z^-1 integral d[phi] p(phi) Tr_CV[U (|psi><psi| (x) |phi><phi|) U^dag]
// with p(phi) = || <phi|U|psi>|phi> ||^2. Monte-Carlo only.
MCEstimate ptrace_variant_evolve(const StandardFormCircuit& circuit,
                                 const PureState& psi_i, long long samples,
                                 std::uint64_t seed, int workers = 1,
                                 CvSampler sampler = CvSampler::Gaussian);

}  // namespace ctcsim
