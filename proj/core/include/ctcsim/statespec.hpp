// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "ctcsim/circuit.hpp"
#include "ctcsim/outcome.hpp"

namespace ctcsim {

// A state given on the command line or in a file. Three forms are accepted:
//   * ket string over {0, 1, +, -}, e.g. "|00>" or "|+->" (the Unicode
//     bracket and minus sign are also accepted);
//   * a JSON array of [re, im] amplitude pairs (normalized within 1e-6);
//   * a JSON nested array forming a density matrix.
struct StateSpec {
  enum class Kind { Ket, Amplitudes, Density };
  Kind kind = Kind::Ket;
  std::optional<PureState> pure;
  std::optional<DensityOperator> density;

  static StateSpec parse(const std::string& text);

  bool is_pure() const { return pure.has_value(); }
  const PureState& as_pure() const;
  DensityOperator as_density() const;
};

struct RunReport {
  std::string theory;
  StandardFormCircuit circuit;
  DensityOperator rho_f;
  std::optional<DensityOperator> tau;
  std::map<std::string, double> diagnostics;

  std::string to_json(int indent = 2) const;
  // Parses an emitted report and re-validates rho_f (and tau if present).
  static RunReport from_json(const std::string& text);
};

// Structured report for the paradox exit path (exit code 2).
std::string paradox_report_json(const std::string& theory,
                                const StandardFormCircuit& circuit,
                                const std::string& message,
                                double residual_trace);

}  // namespace ctcsim
