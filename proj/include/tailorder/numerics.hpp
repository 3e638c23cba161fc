#pragma once

#include <functional>
#include <limits>
#include <span>
#include <utility>

#include "tailorder/defs.hpp"

namespace tailorder::numerics {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Controls for the adaptive Gauss-Kronrod integrator.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
};

// Result of an ordinary least-squares fit of log y on log x.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_se = 0.0;  // sqrt(SSR / (n-2)), 0 when n == 2
  double slope_se = 0.0;     // standard error of the slope estimate
  std::size_t n_points = 0;
};

/// ln Gamma(x) for x > 0, relative error <= 1e-13 (absolute near the zeros
/// at x = 1 and x = 2, which are handled by a dedicated Taylor branch).
double log_gamma(double x);

/// Upper incomplete gamma Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt.
double upper_incomplete_gamma(double a, double x);

/// Regularized P(a,x) = gamma(a,x)/Gamma(a) and Q(a,x) = Gamma(a,x)/Gamma(a).
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

/// ln Q(a,x), finite deep into the tail where Q itself underflows.
double log_regularized_gamma_q(double a, double x);

/// Modified Bessel function of the second kind K_nu(x), x > 0.
/// Series (Temme) for x <= 2, quadrature of the integral representation
/// int_0^inf exp(-x cosh t) cosh(nu t) dt otherwise. Relative error
/// <= 1e-9 for nu in [0, 10], x in [1e-6, 50]; K_{-nu} = K_nu.
double bessel_k(double nu, double x);

/// Adaptive Gauss-Kronrod (G7/K15) integral of f over [a, b]; b may be
/// +infinity, handled by the substitution t = a + u/(1-u). Throws
/// accuracy_error (carrying the best estimate) when the subdivision budget
/// is exhausted before the tolerances are met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Solves f(x) = target for strictly monotone f on [lo, hi]; the bracket is
/// expanded geometrically (up to 60 doublings) when the target is outside
/// f([lo, hi]). Bisection interleaved with secant steps; stops when
/// |f(x) - target| <= tol * max(1, |target|).
double invert_monotone(const std::function<double(double)>& f, double target,
                       double lo, double hi, double tol);

/// OLS of ln y on ln x. Requires >= 2 points, all coordinates > 0.
SlopeFit fit_loglog_slope(std::span<const double> x, std::span<const double> y);

// Gaussian and Student-t helpers used by the elliptical copulas and the CLI.
double normal_cdf(double x);
double normal_quantile(double p);
double incomplete_beta(double a, double b, double x);  // regularized I_x(a,b)
double student_t_cdf(double x, double nu);
double student_t_quantile(double p, double nu);

}  // namespace tailorder::numerics
