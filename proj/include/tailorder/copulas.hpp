#pragma once

#include <memory>
#include <span>
#include <string>

#include "tailorder/defs.hpp"
#include "tailorder/generators.hpp"

namespace tailorder::copulas {

// Pickands-type dependence function A: homogeneous of order 1, convex,
// max(x) <= A(x) <= sum(x). Exchangeable families only, closed under
// margin restriction.
class PickandsFn {
 public:
  enum class Kind { logistic, indep_sum, comonotone_max };

  static PickandsFn logistic(double theta, int d);
  static PickandsFn independence(int d);  // A = x1 + ... + xd
  static PickandsFn comonotone(int d);    // A = max(x1, ..., xd)

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double theta() const { return theta_; }

  double value(std::span<const double> x) const;
  /// A evaluated at k ones (the |I| = k margin restriction at 1).
  double at_ones(int k) const;
  double at_ones() const { return at_ones(dim_); }

 private:
  PickandsFn(Kind k, double theta, int d) : kind_(k), theta_(theta), dim_(d) {}
  Kind kind_;
  double theta_;
  int dim_;
};

// Copula model over the families used throughout: Archimedean (generator
// based), bivariate elliptical (Gaussian / Student-t analytic, Kotz via
// Monte Carlo only), extreme-value, and the two Frechet boundary cases.
class CopulaModel {
 public:
  enum class Kind {
    archimedean,
    gaussian,
    student,
    kotz,
    extreme_value,
    independence,
    comonotone,
  };

  static CopulaModel archimedean(int d, generators::Generator gen);
  static CopulaModel gaussian(double rho);
  static CopulaModel student(double rho, double nu);
  static CopulaModel kotz(double rho, double n, double beta, double xi);
  static CopulaModel extreme_value(PickandsFn a);
  static CopulaModel independence(int d);
  static CopulaModel comonotone(int d);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  double rho() const { return rho_; }
  double nu() const { return nu_; }
  double kotz_n() const { return kotz_n_; }
  double kotz_beta() const { return kotz_beta_; }
  double kotz_xi() const { return kotz_xi_; }
  const generators::Generator& generator() const { return *gen_; }
  const PickandsFn& pickands() const { return *pickands_; }
  bool has_analytic_cdf() const { return kind_ != Kind::kotz; }

  /// C(u), grounded and with uniform margins; coordinates equal to 1 reduce
  /// to the corresponding margin. Kotz models have no analytic cdf.
  double cdf(std::span<const double> u) const;

  /// C(u, ..., u) for u in (0,1). Exact power laws (extreme value, Gumbel
  /// Archimedean, boundary copulas) bypass the generic path.
  double diagonal(double u) const;

  /// Survival copula diagonal C-hat(u 1_d) = P[all U_i > 1-u], via
  /// inclusion-exclusion over the exchangeable margins (d <= 20), or by
  /// reflection symmetry for the elliptical families.
  double survival_diagonal(double u) const;

  std::string describe() const;

 private:
  explicit CopulaModel(Kind k) : kind_(k) {}
  Kind kind_;
  int dim_ = 2;
  double rho_ = 0.0, nu_ = 0.0;
  double kotz_n_ = 1.0, kotz_beta_ = 0.5, kotz_xi_ = 1.0;
  std::shared_ptr<const generators::Generator> gen_;
  std::shared_ptr<const PickandsFn> pickands_;
};

/// kappa_L of an extreme-value copula: A(1, ..., 1).
double ev_lower_tail_order(const PickandsFn& a);

/// Upper tail-dependence parameter of an extreme-value copula:
/// lambda = d - sum_{|I| >= 2} (-1)^{|I|} A_I(1, ..., 1).
double ev_upper_lambda(const PickandsFn& a);

}  // namespace tailorder::copulas
