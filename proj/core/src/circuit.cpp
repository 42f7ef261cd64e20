// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/circuit.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ctcsim/error.hpp"
#include "json_util.hpp"

namespace ctcsim {

using nlohmann::json;

namespace {

Matrix controlled(const Matrix& target_gate) {
  Matrix out = Matrix::Identity(4, 4);
  out.block(2, 2, 2, 2) = target_gate;
  return out;
}

Matrix swap_gate() {
  Matrix out = Matrix::Zero(4, 4);
  out(0, 0) = 1;
  out(1, 2) = 1;
  out(2, 1) = 1;
  out(3, 3) = 1;
  return out;
}

GateName gate_name_from_string(const std::string& s, const std::string& where) {
  static const std::pair<const char*, GateName> table[] = {
      {"X", GateName::X},       {"Y", GateName::Y},
      {"Z", GateName::Z},       {"H", GateName::H},
      {"S", GateName::S},       {"T", GateName::T},
      {"CNOT", GateName::CNOT}, {"CZ", GateName::CZ},
      {"CH", GateName::CH},     {"SWAP", GateName::SWAP},
      {"MATRIX", GateName::MATRIX},
  };
  for (const auto& [name, value] : table) {
    if (s == name) return value;
  }
  throw ParseError(where + ": unknown gate name '" + s + "'");
}

}  // namespace

int max_qubits() {
  if (const char* env = std::getenv("CTC_SIM_MAX_QUBITS")) {
    const int v = std::atoi(env);
    if (v >= 2) return v;
  }
  return 10;
}

const char* gate_name_string(GateName name) {
  switch (name) {
    case GateName::X: return "X";
    case GateName::Y: return "Y";
    case GateName::Z: return "Z";
    case GateName::H: return "H";
    case GateName::S: return "S";
    case GateName::T: return "T";
    case GateName::CNOT: return "CNOT";
    case GateName::CZ: return "CZ";
    case GateName::CH: return "CH";
    case GateName::SWAP: return "SWAP";
    case GateName::MATRIX: return "MATRIX";
  }
  return "?";
}

int gate_arity(GateName name) {
  switch (name) {
    case GateName::X:
    case GateName::Y:
    case GateName::Z:
    case GateName::H:
    case GateName::S:
    case GateName::T:
      return 1;
    case GateName::CNOT:
    case GateName::CZ:
    case GateName::CH:
    case GateName::SWAP:
      return 2;
    case GateName::MATRIX:
      return 0;  // arity comes from the payload
  }
  return 0;
}

Matrix gate_matrix(const GateSpec& gate) {
  switch (gate.name) {
    case GateName::X: return pauli_x();
    case GateName::Y: return pauli_y();
    case GateName::Z: return pauli_z();
    case GateName::H: return hadamard();
    case GateName::S: {
      Matrix m = Matrix::Identity(2, 2);
      m(1, 1) = Complex(0, 1);
      return m;
    }
    case GateName::T: {
      Matrix m = Matrix::Identity(2, 2);
      m(1, 1) = std::polar(1.0, M_PI / 4);
      return m;
    }
    case GateName::CNOT: return controlled(pauli_x());
    case GateName::CZ: return controlled(pauli_z());
    case GateName::CH: return controlled(hadamard());
    case GateName::SWAP: return swap_gate();
    case GateName::MATRIX:
      if (!gate.matrix) {
        throw ValidationError("MATRIX gate without a payload");
      }
      return *gate.matrix;
  }
  throw ValidationError("unhandled gate");
}

void validate_circuit(const StandardFormCircuit& circuit) {
  if (circuit.n < 1 || circuit.m < 1) {
    throw ValidationError("circuit: n >= 1 and m >= 1 are required");
  }
  if (circuit.qubits() > max_qubits()) {
    std::ostringstream msg;
    msg << "circuit: n+m = " << circuit.qubits() << " exceeds the cap of "
        << max_qubits() << " qubits";
    throw ValidationError(msg.str());
  }
  for (size_t g = 0; g < circuit.gates.size(); ++g) {
    const GateSpec& gate = circuit.gates[g];
    const std::string where = "gates[" + std::to_string(g) + "]";
    std::set<int> seen;
    for (int t : gate.targets) {
      if (t < 0 || t >= circuit.qubits()) {
        throw ValidationError(where + ": target " + std::to_string(t) +
                              " out of range");
      }
      if (!seen.insert(t).second) {
        throw ValidationError(where + ": duplicate target " +
                              std::to_string(t));
      }
    }
    if (gate.name == GateName::MATRIX) {
      if (!gate.matrix) {
        throw ValidationError(where + ": MATRIX gate requires a payload");
      }
      if (gate.targets.empty()) {
        throw ValidationError(where + ": MATRIX gate requires targets");
      }
      const Index want = Index(1) << gate.targets.size();
      if (gate.matrix->rows() != want || gate.matrix->cols() != want) {
        throw ValidationError(where + ": MATRIX payload dimension mismatch");
      }
      if (!is_unitary(*gate.matrix, kUnitaryTol)) {
        throw ValidationError(where + ": MATRIX payload is not unitary");
      }
    } else if (int(gate.targets.size()) != gate_arity(gate.name)) {
      throw ValidationError(where + ": " +
                            std::string(gate_name_string(gate.name)) +
                            " expects " + std::to_string(gate_arity(gate.name)) +
                            " targets, got " +
                            std::to_string(gate.targets.size()));
    }
  }
}

StandardFormCircuit parse_circuit(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("circuit: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("m") ||
      !doc.contains("gates")) {
    throw ParseError("circuit: expected an object with n, m, and gates");
  }
  if (!doc["n"].is_number_integer() || !doc["m"].is_number_integer() ||
      !doc["gates"].is_array()) {
    throw ParseError("circuit: n and m must be integers, gates an array");
  }
  StandardFormCircuit circuit;
  circuit.n = doc["n"].get<int>();
  circuit.m = doc["m"].get<int>();
  for (size_t g = 0; g < doc["gates"].size(); ++g) {
    const json& jgate = doc["gates"][g];
    const std::string where = "gates[" + std::to_string(g) + "]";
    if (!jgate.is_object() || !jgate.contains("name") ||
        !jgate.contains("targets") || !jgate["name"].is_string() ||
        !jgate["targets"].is_array()) {
      throw ParseError(where + ": expected {name, targets}");
    }
    GateSpec gate;
    gate.name = gate_name_from_string(jgate["name"].get<std::string>(), where);
    for (const json& t : jgate["targets"]) {
      if (!t.is_number_integer()) {
        throw ParseError(where + ": targets must be integers");
      }
      gate.targets.push_back(t.get<int>());
    }
    if (jgate.contains("matrix")) {
      gate.matrix = detail::matrix_from_json(jgate["matrix"], where);
    }
    circuit.gates.push_back(std::move(gate));
  }
  try {
    validate_circuit(circuit);
  } catch (const ValidationError& e) {
    throw ParseError(std::string("circuit: ") + e.what());
  }
  return circuit;
}

std::string circuit_to_json(const StandardFormCircuit& circuit) {
  json doc;
  doc["n"] = circuit.n;
  doc["m"] = circuit.m;
  doc["gates"] = json::array();
  for (const GateSpec& gate : circuit.gates) {
    json jgate;
    jgate["name"] = gate_name_string(gate.name);
    jgate["targets"] = gate.targets;
    if (gate.matrix) {
      jgate["matrix"] = detail::matrix_to_json(*gate.matrix);
    }
    doc["gates"].push_back(std::move(jgate));
  }
  return doc.dump();
}

Matrix embed_gate(const Matrix& gate, const std::vector<int>& targets,
                  int qubits) {
  const Index dim = Index(1) << qubits;
  const int k = int(targets.size());
  const Index gate_dim = Index(1) << k;
  Matrix out = Matrix::Zero(dim, dim);
  for (Index col = 0; col < dim; ++col) {
    // Gate-local index of this column; targets[0] is the most significant
    // gate bit, matching the big-endian register convention.
    Index g = 0;
    for (int j = 0; j < k; ++j) {
      const int bit = qubits - 1 - targets[j];
      g = (g << 1) | ((col >> bit) & 1);
    }
    for (Index gp = 0; gp < gate_dim; ++gp) {
      if (gate(gp, g) == Complex(0, 0)) continue;
      Index row = col;
      for (int j = 0; j < k; ++j) {
        const int bit = qubits - 1 - targets[j];
        const Index val = (gp >> (k - 1 - j)) & 1;
        row = (row & ~(Index(1) << bit)) | (val << bit);
      }
      out(row, col) = gate(gp, g);
    }
  }
  return out;
}

UnitaryMatrix compile_unitary(const StandardFormCircuit& circuit) {
  validate_circuit(circuit);
  Matrix u = Matrix::Identity(circuit.dim(), circuit.dim());
  for (const GateSpec& gate : circuit.gates) {
    u = embed_gate(gate_matrix(gate), gate.targets, circuit.qubits()) * u;
  }
  return UnitaryMatrix::validated(std::move(u));
}

StandardFormCircuit catalog(const std::string& name) {
  StandardFormCircuit circuit;
  if (name == "unproven_theorem") {
    // B = 0, M = 1 (CR), T = 2 (CV); U = SWAP_MT CNOT_BM CNOT_TB.
    circuit.n = 2;
    circuit.m = 1;
    circuit.gates = {{GateName::CNOT, {2, 0}, {}},
                     {GateName::CNOT, {0, 1}, {}},
                     {GateName::SWAP, {1, 2}, {}}};
  } else if (name == "distinguishing") {
    // U = CH * SWAP with the Hadamard controlled on the CR qubit.
    circuit.n = 1;
    circuit.m = 1;
    circuit.gates = {{GateName::SWAP, {0, 1}, {}},
                     {GateName::CH, {0, 1}, {}}};
  } else if (name == "swap") {
    circuit.n = 1;
    circuit.m = 1;
    circuit.gates = {{GateName::SWAP, {0, 1}, {}}};
  } else if (name == "traceless_paradox") {
    // U = 1 (x) X: a product interaction whose CV factor is traceless.
    circuit.n = 1;
    circuit.m = 1;
    circuit.gates = {{GateName::X, {1}, {}}};
  } else if (name == "ecm_counterexample") {
    // Non-converging ladder: V = (X (x) 1) CNOT SWAP is the rung unitary of
    // the unwrapped circuit; the standard form stores U = SWAP * V so that
    // the consistency channel of U is exactly the iterated rung map.
    circuit.n = 1;
    circuit.m = 1;
    circuit.gates = {{GateName::SWAP, {0, 1}, {}},
                     {GateName::CNOT, {0, 1}, {}},
                     {GateName::X, {0}, {}},
                     {GateName::SWAP, {0, 1}, {}}};
  } else {
    std::ostringstream msg;
    msg << "unknown catalog circuit '" << name << "'; valid names:";
    for (const std::string& valid : catalog_names()) msg << " " << valid;
    throw ValidationError(msg.str());
  }
  return circuit;
}

std::vector<std::string> catalog_names() {
  return {"unproven_theorem", "distinguishing", "swap", "traceless_paradox",
          "ecm_counterexample"};
}

}  // namespace ctcsim
