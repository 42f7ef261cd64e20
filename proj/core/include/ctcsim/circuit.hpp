// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctcsim/states.hpp"

namespace ctcsim {

// Conventions used throughout:
//   * Qubits 0..n-1 are chronology respecting (CR), n..n+m-1 are chronology
//     violating (CV).
//   * Big-endian ordering: qubit 0 is the most significant index bit, so a
//     basis state |q0 q1 ... > has index q0*2^(k-1) + q1*2^(k-2) + ...
//   * The gate list is in application order: the first listed gate acts
//     first, i.e. compile_unitary returns G_k * ... * G_1.
//   * Controlled gates list the control first, then the target.

enum class GateName { X, Y, Z, H, S, T, CNOT, CZ, CH, SWAP, MATRIX };

struct GateSpec {
  GateName name;
  std::vector<int> targets;
  std::optional<Matrix> matrix;  // required iff name == MATRIX
};

struct StandardFormCircuit {
  int n = 1;  // CR qubit count, >= 1
  int m = 1;  // CV qubit count, >= 1
  std::vector<GateSpec> gates;

  int qubits() const { return n + m; }
  Index cr_dim() const { return Index(1) << n; }
  Index cv_dim() const { return Index(1) << m; }
  Index dim() const { return Index(1) << (n + m); }
};

// Default cap on n+m (and on the n+2m postselection register); the
// CTC_SIM_MAX_QUBITS environment variable overrides it.
int max_qubits();

const char* gate_name_string(GateName name);
int gate_arity(GateName name);

// 2^k x 2^k matrix of a gate on its own k targets (control = first target).
Matrix gate_matrix(const GateSpec& gate);

// Validates gate targets/arity/payload and the qubit cap.
void validate_circuit(const StandardFormCircuit& circuit);

// Parses the JSON circuit document: {"n": int, "m": int, "gates": [...]},
// each gate {"name": str, "targets": [int...], "matrix": [[[re,im],...]]}.
StandardFormCircuit parse_circuit(const std::string& text);

std::string circuit_to_json(const StandardFormCircuit& circuit);

// U = G_k ... G_1 embedded on n+m qubits.
UnitaryMatrix compile_unitary(const StandardFormCircuit& circuit);

// Embeds a gate matrix on the given targets of a `qubits`-qubit register,
// identity elsewhere.
Matrix embed_gate(const Matrix& gate, const std::vector<int>& targets,
                  int qubits);

// Built-in circuits: unproven_theorem, distinguishing, swap,
// traceless_paradox, ecm_counterexample.
StandardFormCircuit catalog(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace ctcsim
