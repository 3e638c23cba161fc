#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tailorder/defs.hpp"
#include "tailorder/rng.hpp"

namespace tailorder::radial {

enum class Family {
  point_mass,        // degenerate at r0 > 0
  gamma,             // Gamma(shape, 1)
  inverse_gamma,     // 1 / Gamma(shape, 1)
  gig_t,             // bivariate Student-t radial, survival (1+x^2/nu)^(-nu/2)
  k_product,         // Gamma(d,1) * Gamma(alpha,1), K-distribution
  dagum,             // cdf [1 + (x/sigma)^-alpha]^-beta
  positive_weibull,  // cdf 1 - exp(-x^alpha)
  kotz,              // density ~ x^{2N-1} exp(-beta x^{2 xi})
  positive_stable,   // LT exp(-s^alpha); sampling only
  erlang_ratio,      // Gamma(d,1) / inner law; sampling only
};

// Classification of the upper tail used by the tail-order catalog.
struct UpperTailClass {
  enum class Kind { regularly_varying, gumbel_mda, bounded };
  Kind kind = Kind::gumbel_mda;
  double rv_index = 0.0;  // survival in RV_{rv_index}; negative when set
};

// Immutable positive distribution used as a radial or frailty law.
// Query operations are pure; sampling consumes an explicitly passed Rng.
class RadialLaw {
 public:
  static RadialLaw point_mass(double r0);
  static RadialLaw gamma(double shape);
  static RadialLaw inverse_gamma(double shape);
  static RadialLaw gig_t(double dof);
  static RadialLaw k_product(int d, double alpha);
  static RadialLaw dagum(double alpha, double beta, double sigma);
  static RadialLaw positive_weibull(double alpha);
  static RadialLaw kotz(double n, double beta, double xi);
  static RadialLaw positive_stable(double alpha);
  static RadialLaw erlang_ratio(int d, RadialLaw denominator);

  Family family() const { return family_; }
  double param(int i) const;  // raw parameters, family-specific order
  int int_param() const { return dim_; }
  const RadialLaw* inner() const { return inner_.get(); }

  bool supports_cdf() const;
  bool has_density() const;

  double cdf(double x) const;
  double survival(double x) const;
  double log_survival(double x) const;
  double pdf(double x) const;
  /// Generalized inverse F^{-1}(p) = inf{x : F(x) >= p}, p in (0,1).
  double quantile(double p) const;

  double sample_one(Rng& rng) const;
  std::vector<double> sample(RngStream stream, std::size_t n,
                             Exec exec = Exec::parallel) const;

  /// Index alpha with F in RV_alpha(0+), when the lower tail is regularly
  /// varying; absent for rapidly varying or degenerate lower tails.
  std::optional<double> lower_tail_index() const;

  UpperTailClass upper_tail_class() const;

  /// Auxiliary function a(x) = int_x^inf S(t) dt / S(x) of the Gumbel-MDA
  /// characterization; only defined for laws in that class.
  double gumbel_aux(double x) const;

  /// Regular-variation index of gumbel_aux at infinity, where known.
  std::optional<double> gumbel_aux_rv_index() const;

  std::optional<double> mean() const;
  std::string describe() const;

  bool operator==(const RadialLaw& o) const;

 private:
  RadialLaw(Family f, double p1, double p2, double p3, int dim)
      : family_(f), p1_(p1), p2_(p2), p3_(p3), dim_(dim) {}
  Family family_;
  double p1_ = 0.0, p2_ = 0.0, p3_ = 0.0;
  int dim_ = 0;
  std::shared_ptr<const RadialLaw> inner_;
};

}  // namespace tailorder::radial
