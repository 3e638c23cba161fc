#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tailorder::verify {

enum class Suite { quick, full };

struct CheckResult {
  std::string label;
  double observed = 0.0;
  double target = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;  // 0 = no runtime budget
  std::vector<CheckResult> checks;
};

/// Runs the verification suite. `quick` caps Monte Carlo sizes at 1e5 and
/// widens the Monte Carlo tolerances accordingly; `full` runs the canonical
/// configuration (Monte Carlo sizes up to 1e6, tolerances as pinned).
std::vector<CriterionResult> run_all(Suite suite, std::uint64_t seed);

}  // namespace tailorder::verify
