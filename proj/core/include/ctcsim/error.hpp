// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ctcsim {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input failed a type invariant or precondition (bad dimension, non-unitary
// gate payload, non-density matrix, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Malformed circuit or state document.
struct ParseError : Error {
  using Error::Error;
};

// Dynamical consistency paradox: the theory defines no output state.
struct ParadoxError : Error {
  ParadoxError(const std::string& what, double residual_trace)
      : Error(what), residual_trace(residual_trace) {}
  double residual_trace;
};

// The noisy consistency condition is singular at the requested noise level.
struct DegeneracyError : Error {
  using Error::Error;
};

}  // namespace ctcsim
