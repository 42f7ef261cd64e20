// SPDX-License-Identifier: Apache-2.0
#include "ctcsim/statespec.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "ctcsim/error.hpp"
#include "json_util.hpp"

namespace ctcsim {

using nlohmann::json;

namespace {

// Strips one leading UTF-8 code point that stands for a ket symbol and
// returns it as one of '0', '1', '+', '-', or 0 at the closing bracket.
char next_ket_symbol(const std::string& s, size_t& pos) {
  if (pos >= s.size()) {
    throw ParseError("ket string: missing closing bracket");
  }
  const unsigned char c = s[pos];
  if (c == '0' || c == '1' || c == '+' || c == '-') {
    ++pos;
    return char(c);
  }
  if (c == '>') {
    ++pos;
    return 0;
  }
  // UTF-8 minus sign U+2212 and right angle bracket U+27E9.
  if (s.compare(pos, 3, "\xE2\x88\x92") == 0) {
    pos += 3;
    return '-';
  }
  if (s.compare(pos, 3, "\xE2\x9F\xA9") == 0) {
    pos += 3;
    return 0;
  }
  throw ParseError("ket string: symbols must be one of {0, 1, +, -}");
}

PureState parse_ket(const std::string& text) {
  size_t pos = 1;  // caller checked the leading '|'
  Vector amps = Vector::Ones(1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  int symbols = 0;
  for (;;) {
    const char symbol = next_ket_symbol(text, pos);
    if (symbol == 0) break;
    Vector qubit(2);
    switch (symbol) {
      case '0': qubit << 1, 0; break;
      case '1': qubit << 0, 1; break;
      case '+': qubit << inv_sqrt2, inv_sqrt2; break;
      default: qubit << inv_sqrt2, -inv_sqrt2; break;
    }
    amps = tensor_product(amps, Vector(qubit));
    ++symbols;
  }
  if (pos != text.size()) {
    throw ParseError("ket string: trailing characters after the bracket");
  }
  if (symbols == 0) {
    throw ParseError("ket string: empty ket");
  }
  return PureState::normalized(std::move(amps));
}

}  // namespace

StateSpec StateSpec::parse(const std::string& text) {
  StateSpec spec;
  if (!text.empty() && text[0] == '|') {
    spec.kind = Kind::Ket;
    spec.pure = parse_ket(text);
    return spec;
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("state: not a ket string and ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) {
    throw ParseError("state: expected a JSON array");
  }
  const bool nested_matrix = doc[0].is_array() && !doc[0].empty() &&
                             doc[0][0].is_array();
  if (nested_matrix) {
    spec.kind = Kind::Density;
    spec.density = DensityOperator::validated(
        detail::matrix_from_json(doc, "state"), 1e-8, 1e-8, 1e-8);
    return spec;
  }
  spec.kind = Kind::Amplitudes;
  Vector v = detail::vector_from_json(doc, "state");
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > 1e-6) {
    throw ParseError("state: amplitude vector is not normalized");
  }
  spec.pure = PureState::normalized(v / norm);
  return spec;
}

const PureState& StateSpec::as_pure() const {
  if (!pure) {
    throw ValidationError("state: a pure state is required here");
  }
  return *pure;
}

DensityOperator StateSpec::as_density() const {
  if (density) return *density;
  return DensityOperator::pure(as_pure());
}

std::string RunReport::to_json(int indent) const {
  json doc;
  doc["theory"] = theory;
  doc["circuit"] = json::parse(circuit_to_json(circuit));
  doc["rho_f"] = detail::matrix_to_json(rho_f.mat);
  if (tau) {
    doc["tau"] = detail::matrix_to_json(tau->mat);
  }
  doc["diagnostics"] = diagnostics;
  return doc.dump(indent);
}

RunReport RunReport::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("theory") || !doc.contains("circuit") ||
      !doc.contains("rho_f") || !doc.contains("diagnostics")) {
    throw ParseError("report: missing required fields");
  }
  RunReport report;
  report.theory = doc["theory"].get<std::string>();
  report.circuit = parse_circuit(doc["circuit"].dump());
  report.rho_f = DensityOperator::validated(
      detail::matrix_from_json(doc["rho_f"], "report"), 1e-8, 1e-8, 1e-8);
  if (doc.contains("tau")) {
    report.tau = DensityOperator::validated(
        detail::matrix_from_json(doc["tau"], "report"), 1e-8, 1e-8, 1e-8);
  }
  for (const auto& [key, value] : doc["diagnostics"].items()) {
    report.diagnostics[key] = value.get<double>();
  }
  return report;
}

std::string paradox_report_json(const std::string& theory,
                                const StandardFormCircuit& circuit,
                                const std::string& message,
                                double residual_trace) {
  json doc;
  doc["paradox"] = true;
  doc["theory"] = theory;
  doc["circuit"] = json::parse(circuit_to_json(circuit));
  doc["message"] = message;
  doc["residual_trace"] = residual_trace;
  return doc.dump(2);
}

}  // namespace ctcsim
