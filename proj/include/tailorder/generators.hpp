#pragma once

#include <memory>
#include <optional>
#include <string>

#include "tailorder/defs.hpp"
#include "tailorder/radial.hpp"

namespace tailorder::generators {

/// Williamson d-transform psi(s) = int_s^inf (1 - s/r)^{d-1} dF(r) of the
/// law's cdf. Quadrature against the density when one exists (split at the
/// kink s and at the law's 0.5/0.9/0.99 quantiles), otherwise against the
/// survival function via integration by parts. Requires F(0) = 0.
double williamson_transform(const radial::RadialLaw& law, int d, double s);

/// Law of Gamma(d,1)/H for a strictly positive frailty H. InverseGamma
/// frailties map onto the closed-form K-distribution product; other
/// frailties yield a sampling-only composite law.
radial::RadialLaw frailty_to_radial(int d, const radial::RadialLaw& frailty);

// Archimedean generator psi with psi(0) = 1, nonincreasing, psi(inf) = 0.
class Generator {
 public:
  enum class Kind { acig, joe2000, gumbel, williamson };

  /// Laplace transform of 1/Gamma(alpha,1): (2/Gamma(a)) s^{a/2} K_a(2 sqrt s).
  static Generator acig(double alpha);
  /// psi(s) = Gamma(1/a, s^a) / Gamma(1/a), 0 < a < 1 (equals the integral
  /// int_s^inf exp(-v^a) dv / Gamma(1 + 1/a) after substituting w = v^a).
  static Generator joe2000(double alpha);
  /// psi(s) = exp(-s^{1/theta}), theta >= 1.
  static Generator gumbel(double theta);
  /// Williamson d-transform of the given radial law.
  static Generator williamson(radial::RadialLaw law, int d);

  Kind kind() const { return kind_; }
  double shape() const { return shape_; }
  int williamson_dim() const { return dim_; }
  const radial::RadialLaw* williamson_law() const { return law_.get(); }

  double psi(double s) const;
  /// Inverse of psi on (0, 1]; psi_inverse(1) = 0, u = 0 maps to +infinity.
  /// Closed form for gumbel, monotone inversion (tol 1e-12) otherwise.
  double psi_inverse(double u) const;

  /// Spot check of d-monotonicity: alternating forward differences of
  /// orders 0..d-1 at 20 grid points spanning the generator's own scale.
  bool d_monotone_spot_check(int d) const;

  std::string describe() const;

 private:
  Generator(Kind k, double shape) : kind_(k), shape_(shape) {}
  Kind kind_;
  double shape_ = 0.0;
  int dim_ = 0;
  std::shared_ptr<const radial::RadialLaw> law_;
};

}  // namespace tailorder::generators
