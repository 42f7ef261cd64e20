// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "ctcsim/dctc.hpp"
#include "ctcsim/pctc.hpp"
#include "ctcsim/tctc.hpp"

namespace ctcsim {

enum class Theory { Dctc, Pctc, Tctc };

struct DistinguishabilityReport {
  double input_overlap = 0.0;  // |<a|b>|
  DensityOperator rho_f_a;
  DensityOperator rho_f_b;
  double trace_dist = 0.0;
  double fid = 0.0;
  double tctc_bound = 0.0;  // sqrt(1 - |<a|b>|^2/(d+1)^2), d = 2^m
  double lambda_a = 0.0;
  double lambda_b = 0.0;
  double success_probability = 0.0;  // (1 + D)/2, single optimal measurement
};

DistinguishabilityReport distinguish(
    const StandardFormCircuit& circuit, const PureState& a, const PureState& b,
    Theory theory, const DctcRule& rule = DctcRule::max_entropy());

struct BoundAuditReport {
  long long trials = 0;
  long long violations = 0;
  // Smallest observed slack of each audited inequality.
  double min_margin_p_norm = 0.0;     // d - ||P psi||
  double min_margin_lambda = 0.0;     // lambda - 1/(d+1)
  double min_margin_fidelity = 0.0;   // F - |<a|b>|/(d+1)
  double min_margin_distance = 0.0;   // sqrt(1 - F^2) - D
  double min_margin_tctc_bound = 0.0;  // tctc_bound - D
  bool distance_one_only_orthogonal = true;
};

// Audits ||P psi|| <= d, lambda >= 1/(d+1), F >= |<a|b>|/(d+1),
// D <= sqrt(1-F^2) and D <= sqrt(1-|<a|b>|^2/(d+1)^2) over Haar-random
// circuits and non-orthogonal pure input pairs.
BoundAuditReport bound_audit(long long trials, std::uint64_t seed, int n = 1,
                             int m = 1);

struct CloningProbeReport {
  long long trials = 0;
  double best_clone_fidelity = 0.0;
  long long pure_output_events = 0;
  // Pure outputs the renormalized channel term failed to reproduce.
  long long pure_output_mismatches = 0;
  long long perfect_clone_pairs = 0;  // distinct-input pairs cloned exactly
};

// Sweeps random two-CR-qubit circuits attempting |psi>|0> -> |psi>|psi>
// under the T-CTC map; records the best clone fidelity and checks that pure
// outputs are reproduced by the channel term alone.
CloningProbeReport cloning_probe(long long trials, std::uint64_t seed);

// Standard form circuit whose single gate is a Haar-random unitary on all
// n+m qubits.
StandardFormCircuit random_circuit(int n, int m, Rng& rng);

// Random circuit over the named gate set (for parser/compiler properties).
StandardFormCircuit random_gate_circuit(int n, int m, int max_gates, Rng& rng);

}  // namespace ctcsim
