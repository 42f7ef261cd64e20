// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace ctcsim {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

// Runs the full verification suite. quick mode reduces sample counts and
// trial counts; the checks and tolerances are unchanged.
std::vector<CriterionResult> run_acceptance(bool quick = false);

bool all_passed(const std::vector<CriterionResult>& results);

// One line per criterion: "PASS  3  unproven-theorem-tctc ... (1.2s)".
std::string format_results(const std::vector<CriterionResult>& results);

}  // namespace ctcsim
