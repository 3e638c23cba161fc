#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailorder {

inline constexpr const char* kVersion = "0.1.0";

// Tail side selector shared by samplers, estimators and the CLI.
enum class Side { lower, upper };

// Execution policy for the row-parallel kernels. Every kernel derives its
// randomness per row, so `serial` and `parallel` produce bit-identical
// output; `serial` is kept as the reference path for tests and benchmarks.
enum class Exec { serial, parallel };

// Adaptive routine ran out of budget; carries the best estimate reached.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double best)
      : std::runtime_error(what), best_estimate(best) {}
  double best_estimate;
};

// Root bracketing failed after the allowed number of expansions.
class no_bracket_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation is not defined for the given model/law (e.g. no analytic cdf).
class unsupported_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Combinatorial work would exceed the dimension budget.
class budget_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Estimation could not proceed (e.g. too few usable grid points).
class estimation_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed CLI input (model spec grammar, flag combinations).
class usage_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tailorder
