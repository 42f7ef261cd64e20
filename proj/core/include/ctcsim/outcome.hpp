// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "ctcsim/states.hpp"

namespace ctcsim {

// Result of running one theory on one circuit.
struct TheoryOutcome {
  DensityOperator rho_f;
  std::optional<DensityOperator> tau;
  std::optional<double> normalizer;
  std::optional<double> entropy_tau;
  std::map<std::string, double> diagnostics;
};

}  // namespace ctcsim
