#pragma once

#include <functional>
#include <optional>
#include <string>

#include "tailorder/copulas.hpp"
#include "tailorder/defs.hpp"
#include "tailorder/radial.hpp"

namespace tailorder::tailmetrics {

enum class Method { analytic_diagonal, monte_carlo, mda_ratio };

// Log-spaced evaluation grid for diagonal regressions.
struct GridSpec {
  double u_min = 1e-6;
  double u_max = 1e-3;
  int points = 20;

  static GridSpec analytic() { return {1e-6, 1e-3, 20}; }
  static GridSpec monte_carlo() { return {5e-3, 5e-2, 10}; }
  std::vector<double> values() const;
};

struct TailOrderEstimate {
  double kappa = 1.0;        // slope clamped into [1, d]
  double raw_slope = 1.0;    // unclamped regression slope
  double stderr_ = 0.0;      // standard error of the slope
  double eta = 1.0;          // 1 / kappa
  double chi_bar = 1.0;      // 2 / kappa - 1
  std::optional<double> lambda;
  Side side = Side::lower;
  Method method = Method::analytic_diagonal;
  GridSpec grid;
  int dropped_points = 0;  // grid points discarded (zero/invalid diagonal)
};

// Closed-form tail orders and tail-dependence parameters, where known.
struct CatalogEntry {
  std::string model;
  std::optional<double> kappa_lower;
  std::optional<double> kappa_upper;
  std::optional<double> lambda_lower;
  std::optional<double> lambda_upper;
  std::optional<double> moment_index;  // M_H = sup{m : E[H^m] < inf}
  std::string note;
};

/// Fills every analytically determined field for the given model; fields the
/// catalog does not determine stay absent. Unknown models yield an entry
/// with only the description set.
CatalogEntry tail_order_catalog(const copulas::CopulaModel& model);

/// Log-log regression of a diagonal (or survival-diagonal) function over a
/// grid. Nonpositive values are dropped with a warning count; fewer than 5
/// surviving points raise estimation_error. `dim`, when given, clamps the
/// reported kappa into [1, d].
TailOrderEstimate estimate_tail_order_diagonal(
    const std::function<double(double)>& diag, Side side, GridSpec grid,
    std::optional<int> dim = std::nullopt,
    Method method = Method::analytic_diagonal);

/// Tail-dependence parameter estimate: mean of diag(u)/u over the three
/// smallest grid points with nonzero diagonal. Caller asserts kappa = 1.
double estimate_lambda(const std::function<double(double)>& diag,
                       GridSpec grid);

/// Tail order of an exchangeable elliptical copula with a Gumbel-MDA radial
/// law, evaluated at finite r:
///   log S(b r) / log S(r),  b = sqrt(d / (1 + (d-1) rho)).
/// Computed from log-survivals so the far tail cannot underflow. Requires
/// S(r) < 1e-4.
double mda_gumbel_tail_order(const radial::RadialLaw& law, double rho, int d,
                             double r);

/// (eta, chi_bar) = (1/kappa, 2/kappa - 1) for kappa >= 1.
std::pair<double, double> derived_measures(double kappa);

}  // namespace tailorder::tailmetrics
