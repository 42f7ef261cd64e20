// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ctcsim/error.hpp"

namespace ctcsim {

namespace {

DensityOperator evolve_for(const StandardFormCircuit& circuit,
                           const PureState& psi, Theory theory,
                           const DctcRule& rule) {
  switch (theory) {
    case Theory::Dctc:
      return dctc_evolve(circuit, DensityOperator::pure(psi), rule).rho_f;
    case Theory::Pctc:
      return pctc_evolve(circuit, DensityOperator::pure(psi)).rho_f;
    case Theory::Tctc:
      return tctc_evolve(circuit, psi).rho_f;
  }
  throw Error("unhandled theory");
}

double lambda_for(const CvTraceOperator& p, const PureState& psi, Index dcv) {
  const double norm_sq = (p.mat * psi.amplitudes).squaredNorm();
  return double(dcv) / (double(dcv) + norm_sq);
}

}  // namespace

DistinguishabilityReport distinguish(const StandardFormCircuit& circuit,
                                     const PureState& a, const PureState& b,
                                     Theory theory, const DctcRule& rule) {
  if (a.dim() != circuit.cr_dim() || b.dim() != circuit.cr_dim()) {
    throw ValidationError("distinguish: inputs must live on the CR qubits");
  }
  DistinguishabilityReport report;
  report.input_overlap = std::abs(a.amplitudes.dot(b.amplitudes));
  report.rho_f_a = evolve_for(circuit, a, theory, rule);
  report.rho_f_b = evolve_for(circuit, b, theory, rule);
  report.trace_dist = trace_distance(report.rho_f_a, report.rho_f_b);
  report.fid = fidelity(report.rho_f_a, report.rho_f_b);

  const double d = double(circuit.cv_dim());
  report.tctc_bound = std::sqrt(
      1.0 - std::pow(report.input_overlap, 2) / std::pow(d + 1.0, 2));
  const CvTraceOperator p = pctc_operator(circuit);
  report.lambda_a = lambda_for(p, a, circuit.cv_dim());
  report.lambda_b = lambda_for(p, b, circuit.cv_dim());
  report.success_probability = 0.5 * (1.0 + report.trace_dist);
  return report;
}

BoundAuditReport bound_audit(long long trials, std::uint64_t seed, int n,
                             int m) {
  BoundAuditReport report;
  report.trials = trials;
  report.min_margin_p_norm = std::numeric_limits<double>::infinity();
  report.min_margin_lambda = std::numeric_limits<double>::infinity();
  report.min_margin_fidelity = std::numeric_limits<double>::infinity();
  report.min_margin_distance = std::numeric_limits<double>::infinity();
  report.min_margin_tctc_bound = std::numeric_limits<double>::infinity();

  const double d = double(Index(1) << m);
  Rng root(seed);
  for (long long trial = 0; trial < trials; ++trial) {
    Rng rng = root.substream(std::uint64_t(trial));
    const StandardFormCircuit circuit = random_circuit(n, m, rng);
    const PureState a = haar_state(Index(1) << n, rng);
    const PureState b = haar_state(Index(1) << n, rng);

    const CvTraceOperator p = pctc_operator(circuit);
    const DistinguishabilityReport dist =
        distinguish(circuit, a, b, Theory::Tctc);

    const double margin_p =
        d - std::max((p.mat * a.amplitudes).norm(),
                     (p.mat * b.amplitudes).norm());
    const double margin_lambda =
        std::min(dist.lambda_a, dist.lambda_b) - 1.0 / (d + 1.0);
    const double margin_f = dist.fid - dist.input_overlap / (d + 1.0);
    const double margin_d =
        std::sqrt(std::max(0.0, 1.0 - dist.fid * dist.fid)) - dist.trace_dist;
    const double margin_bound = dist.tctc_bound - dist.trace_dist;

    report.min_margin_p_norm = std::min(report.min_margin_p_norm, margin_p);
    report.min_margin_lambda =
        std::min(report.min_margin_lambda, margin_lambda);
    report.min_margin_fidelity =
        std::min(report.min_margin_fidelity, margin_f);
    report.min_margin_distance =
        std::min(report.min_margin_distance, margin_d);
    report.min_margin_tctc_bound =
        std::min(report.min_margin_tctc_bound, margin_bound);

    const double slack = 1e-9;
    if (margin_p < -slack || margin_lambda < -slack || margin_f < -slack ||
        margin_d < -slack || margin_bound < -slack) {
      ++report.violations;
    }
    if (dist.trace_dist > 1.0 - 1e-10 && dist.input_overlap >= 1e-10) {
      report.distance_one_only_orthogonal = false;
      ++report.violations;
    }
  }
  return report;
}

CloningProbeReport cloning_probe(long long trials, std::uint64_t seed) {
  CloningProbeReport report;
  report.trials = trials;

  Rng root(seed);
  for (long long trial = 0; trial < trials; ++trial) {
    Rng rng = root.substream(std::uint64_t(trial));
    const StandardFormCircuit circuit = random_circuit(2, 1, rng);
    const PureState single = haar_state(2, rng);
    const PureState input = PureState::normalized(
        tensor_product(single.amplitudes, basis_ket(2, 0)));
    const TheoryOutcome outcome = tctc_evolve(circuit, input);

    const Vector clone_target =
        tensor_product(single.amplitudes, single.amplitudes);
    const double clone_fidelity = std::sqrt(std::max(
        0.0, (clone_target.adjoint() * outcome.rho_f.mat * clone_target)(0)
                 .real()));
    report.best_clone_fidelity =
        std::max(report.best_clone_fidelity, clone_fidelity);

    if (purity(outcome.rho_f) > 1.0 - 1e-9) {
      ++report.pure_output_events;
      // A pure T-CTC output must equal the ordinary quantum channel term.
      const UnitaryMatrix u = compile_unitary(circuit);
      const Matrix channel_input = tensor_product(
          Matrix(input.amplitudes * input.amplitudes.adjoint()),
          Matrix(Matrix::Identity(2, 2) / 2.0));
      Matrix channel = partial_trace(u.mat * channel_input * u.mat.adjoint(),
                                     4, 2, Keep::First);
      channel /= channel.trace().real();
      const DensityOperator channel_only =
          DensityOperator::validated(channel, 1e-8, 1e-8, 1e-8);
      if (trace_distance(outcome.rho_f, channel_only) > 1e-8) {
        ++report.pure_output_mismatches;
      }
      // Exact cloning of a second, non-proportional input would need a pure
      // output with unit clone fidelity there as well.
      if (clone_fidelity > 1.0 - 1e-9) {
        const PureState other = haar_state(2, rng);
        const PureState other_input = PureState::normalized(
            tensor_product(other.amplitudes, basis_ket(2, 0)));
        const TheoryOutcome second = tctc_evolve(circuit, other_input);
        const Vector other_target =
            tensor_product(other.amplitudes, other.amplitudes);
        const double second_fidelity = std::sqrt(std::max(
            0.0,
            (other_target.adjoint() * second.rho_f.mat * other_target)(0)
                .real()));
        if (purity(second.rho_f) > 1.0 - 1e-9 &&
            second_fidelity > 1.0 - 1e-9 &&
            std::abs(single.amplitudes.dot(other.amplitudes)) < 1.0 - 1e-6) {
          ++report.perfect_clone_pairs;
        }
      }
    }
  }
  return report;
}

StandardFormCircuit random_circuit(int n, int m, Rng& rng) {
  StandardFormCircuit circuit;
  circuit.n = n;
  circuit.m = m;
  GateSpec gate;
  gate.name = GateName::MATRIX;
  gate.targets.resize(n + m);
  for (int q = 0; q < n + m; ++q) gate.targets[q] = q;
  gate.matrix = haar_unitary(circuit.dim(), rng);
  circuit.gates.push_back(std::move(gate));
  return circuit;
}

StandardFormCircuit random_gate_circuit(int n, int m, int max_gates,
                                        Rng& rng) {
  static const GateName one_qubit[] = {GateName::X, GateName::Y, GateName::Z,
                                       GateName::H, GateName::S, GateName::T};
  static const GateName two_qubit[] = {GateName::CNOT, GateName::CZ,
                                       GateName::CH, GateName::SWAP};
  StandardFormCircuit circuit;
  circuit.n = n;
  circuit.m = m;
  const int qubits = n + m;
  const int count = 1 + int(rng.next_u64() % std::uint64_t(max_gates));
  for (int g = 0; g < count; ++g) {
    GateSpec gate;
    if (qubits >= 2 && rng.uniform() < 0.5) {
      gate.name = two_qubit[rng.next_u64() % 4];
      const int a = int(rng.next_u64() % std::uint64_t(qubits));
      int b = int(rng.next_u64() % std::uint64_t(qubits - 1));
      if (b >= a) ++b;
      gate.targets = {a, b};
    } else {
      gate.name = one_qubit[rng.next_u64() % 6];
      gate.targets = {int(rng.next_u64() % std::uint64_t(qubits))};
    }
    circuit.gates.push_back(std::move(gate));
  }
  return circuit;
}

}  // namespace ctcsim
