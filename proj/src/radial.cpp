#include "tailorder/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tailorder/exec.hpp"
#include "tailorder/numerics.hpp"

namespace tailorder::radial {

namespace num = tailorder::numerics;

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

}  // namespace

RadialLaw RadialLaw::point_mass(double r0) {
  require(r0 > 0.0, "point_mass: requires r0 > 0");
  return RadialLaw(Family::point_mass, r0, 0, 0, 0);
}
RadialLaw RadialLaw::gamma(double shape) {
  require(shape > 0.0, "gamma: requires shape > 0");
  return RadialLaw(Family::gamma, shape, 0, 0, 0);
}
RadialLaw RadialLaw::inverse_gamma(double shape) {
  require(shape > 0.0, "inverse_gamma: requires shape > 0");
  return RadialLaw(Family::inverse_gamma, shape, 0, 0, 0);
}
RadialLaw RadialLaw::gig_t(double dof) {
  require(dof > 0.0, "gig_t: requires dof > 0");
  return RadialLaw(Family::gig_t, dof, 0, 0, 0);
}
RadialLaw RadialLaw::k_product(int d, double alpha) {
  require(d >= 2, "k_product: requires d >= 2");
  require(alpha > 0.0, "k_product: requires alpha > 0");
  return RadialLaw(Family::k_product, alpha, 0, 0, d);
}
RadialLaw RadialLaw::dagum(double alpha, double beta, double sigma) {
  require(alpha > 0.0 && beta > 0.0 && sigma > 0.0,
          "dagum: requires alpha, beta, sigma > 0");
  return RadialLaw(Family::dagum, alpha, beta, sigma, 0);
}
RadialLaw RadialLaw::positive_weibull(double alpha) {
  require(alpha > 0.0, "positive_weibull: requires alpha > 0");
  return RadialLaw(Family::positive_weibull, alpha, 0, 0, 0);
}
RadialLaw RadialLaw::kotz(double n, double beta, double xi) {
  require(n > 0.0 && beta > 0.0 && xi > 0.0,
          "kotz: requires N, beta, xi > 0");
  return RadialLaw(Family::kotz, n, beta, xi, 0);
}
RadialLaw RadialLaw::positive_stable(double alpha) {
  require(alpha > 0.0 && alpha < 1.0,
          "positive_stable: requires alpha in (0,1)");
  return RadialLaw(Family::positive_stable, alpha, 0, 0, 0);
}
RadialLaw RadialLaw::erlang_ratio(int d, RadialLaw denominator) {
  require(d >= 1, "erlang_ratio: requires d >= 1");
  RadialLaw law(Family::erlang_ratio, 0, 0, 0, d);
  law.inner_ = std::make_shared<const RadialLaw>(std::move(denominator));
  return law;
}

double RadialLaw::param(int i) const {
  switch (i) {
    case 0: return p1_;
    case 1: return p2_;
    case 2: return p3_;
    default: throw std::out_of_range("RadialLaw::param");
  }
}

bool RadialLaw::supports_cdf() const {
  return family_ != Family::positive_stable && family_ != Family::erlang_ratio;
}

bool RadialLaw::has_density() const {
  switch (family_) {
    case Family::point_mass:
    case Family::positive_stable:
    case Family::erlang_ratio:
      return false;
    default:
      return true;
  }
}

double RadialLaw::pdf(double x) const {
  if (!has_density()) throw unsupported_error("RadialLaw::pdf: no density");
  if (x < 0.0) return 0.0;
  switch (family_) {
    case Family::gamma:
      if (x == 0.0) return p1_ < 1.0 ? num::kInf : (p1_ == 1.0 ? 1.0 : 0.0);
      return std::exp((p1_ - 1.0) * std::log(x) - x - num::log_gamma(p1_));
    case Family::inverse_gamma:
      if (x == 0.0) return 0.0;
      return std::exp(-(p1_ + 1.0) * std::log(x) - 1.0 / x -
                      num::log_gamma(p1_));
    case Family::gig_t: {
      const double nu = p1_;
      return x * std::exp(-0.5 * (nu + 2.0) * std::log1p(x * x / nu));
    }
    case Family::k_product: {
      if (x == 0.0) return 0.0;
      const double d = dim_, a = p1_;
      const double lg = std::log(2.0) - num::log_gamma(d) - num::log_gamma(a) +
                        (0.5 * (a + d) - 1.0) * std::log(x);
      return std::exp(lg) * num::bessel_k(d - a, 2.0 * std::sqrt(x));
    }
    case Family::dagum: {
      if (x == 0.0) return 0.0;
      const double a = p1_, b = p2_, s = p3_;
      const double z = x / s;
      // z^{ab-1} (1+z^a)^{-b-1} for z <= 1 and z^{-a-1} (1+z^{-a})^{-b-1}
      // for z > 1: each half stays inside double range
      if (z <= 1.0)
        return a * b / s * std::pow(z, a * b - 1.0) *
               std::pow(1.0 + std::pow(z, a), -b - 1.0);
      return a * b / s * std::pow(z, -a - 1.0) *
             std::pow(1.0 + std::pow(z, -a), -b - 1.0);
    }
    case Family::positive_weibull: {
      const double a = p1_;
      if (x == 0.0) return a < 1.0 ? num::kInf : (a == 1.0 ? 1.0 : 0.0);
      return std::exp(std::log(a) + (a - 1.0) * std::log(x) -
                      std::pow(x, a));
    }
    case Family::kotz: {
      const double n = p1_, b = p2_, xi = p3_;
      if (x == 0.0) return 0.0;
      const double lc = std::log(2.0 * xi) + (n / xi) * std::log(b) -
                        num::log_gamma(n / xi);
      return std::exp(lc + (2.0 * n - 1.0) * std::log(x) -
                      b * std::pow(x, 2.0 * xi));
    }
    default:
      throw unsupported_error("RadialLaw::pdf: no density");
  }
}

double RadialLaw::cdf(double x) const {
  if (!supports_cdf())
    throw unsupported_error("RadialLaw::cdf: sampling-only law");
  if (x < 0.0) throw std::domain_error("RadialLaw::cdf: requires x >= 0");
  switch (family_) {
    case Family::point_mass:
      return x >= p1_ ? 1.0 : 0.0;
    case Family::gamma:
      return num::regularized_gamma_p(p1_, x);
    case Family::inverse_gamma:
      return x == 0.0 ? 0.0 : num::regularized_gamma_q(p1_, 1.0 / x);
    case Family::gig_t:
      return -std::expm1(-0.5 * p1_ * std::log1p(x * x / p1_));
    case Family::k_product: {
      if (x == 0.0) return 0.0;
      const double m = dim_ * p1_;  // mean of the product
      if (x <= 2.0 * m) {
        const double v =
            num::integrate([this](double t) { return pdf(t); }, 0.0, x);
        return std::min(v, 1.0);
      }
      return 1.0 - survival(x);
    }
    case Family::dagum:
      return x == 0.0
                 ? 0.0
                 : std::exp(-p2_ * std::log1p(std::pow(x / p3_, -p1_)));
    case Family::positive_weibull:
      return -std::expm1(-std::pow(x, p1_));
    case Family::kotz:
      return num::regularized_gamma_p(p1_ / p3_, p2_ * std::pow(x, 2.0 * p3_));
    default:
      throw unsupported_error("RadialLaw::cdf: sampling-only law");
  }
}

double RadialLaw::survival(double x) const {
  if (!supports_cdf())
    throw unsupported_error("RadialLaw::survival: sampling-only law");
  if (x < 0.0) throw std::domain_error("RadialLaw::survival: requires x >= 0");
  switch (family_) {
    case Family::point_mass:
      return x >= p1_ ? 0.0 : 1.0;
    case Family::gamma:
      return num::regularized_gamma_q(p1_, x);
    case Family::inverse_gamma:
      return x == 0.0 ? 1.0 : num::regularized_gamma_p(p1_, 1.0 / x);
    case Family::gig_t:
      return std::exp(-0.5 * p1_ * std::log1p(x * x / p1_));
    case Family::k_product: {
      const double m = dim_ * p1_;
      if (x > 2.0 * m) {
        return num::integrate([this](double t) { return pdf(t); }, x,
                              num::kInf);
      }
      return std::max(0.0, 1.0 - cdf(x));
    }
    case Family::dagum:
      return -std::expm1(-p2_ * std::log1p(std::pow(x / p3_, -p1_)));
    case Family::positive_weibull:
      return std::exp(-std::pow(x, p1_));
    case Family::kotz:
      return num::regularized_gamma_q(p1_ / p3_, p2_ * std::pow(x, 2.0 * p3_));
    default:
      throw unsupported_error("RadialLaw::survival: sampling-only law");
  }
}

double RadialLaw::log_survival(double x) const {
  if (x < 0.0)
    throw std::domain_error("RadialLaw::log_survival: requires x >= 0");
  switch (family_) {
    case Family::gamma:
      return num::log_regularized_gamma_q(p1_, x);
    case Family::gig_t:
      return -0.5 * p1_ * std::log1p(x * x / p1_);
    case Family::positive_weibull:
      return -std::pow(x, p1_);
    case Family::kotz:
      return num::log_regularized_gamma_q(p1_ / p3_,
                                          p2_ * std::pow(x, 2.0 * p3_));
    case Family::dagum:
      return std::log(survival(x));  // survival itself is tail-accurate
    case Family::inverse_gamma: {
      if (x == 0.0) return 0.0;
      const double p = num::regularized_gamma_p(p1_, 1.0 / x);
      if (p > 1e-290) return std::log(p);
      // leading term of the series for P(a, y), y = 1/x
      const double y = 1.0 / x;
      return -y + p1_ * std::log(y) - num::log_gamma(p1_ + 1.0);
    }
    default: {
      const double s = survival(x);
      return std::log(s);
    }
  }
}

double RadialLaw::quantile(double p) const {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("RadialLaw::quantile: requires p in (0,1)");
  double x;
  switch (family_) {
    case Family::point_mass:
      return p1_;
    case Family::dagum:
      x = p3_ * std::pow(std::pow(p, -1.0 / p2_) - 1.0, -1.0 / p1_);
      break;
    case Family::positive_weibull:
      x = std::pow(-std::log1p(-p), 1.0 / p1_);
      break;
    case Family::gig_t:
      x = std::sqrt(p1_ * std::expm1(-(2.0 / p1_) * std::log1p(-p)));
      break;
    case Family::gamma:
    case Family::inverse_gamma:
    case Family::kotz:
    case Family::k_product: {
      const double guess = mean().value_or(1.0);
      // k_product's cdf is quadrature-backed, so its root residual is
      // bounded by the quadrature tolerance rather than by the solver.
      const double tol = family_ == Family::k_product ? 1e-9 : 1e-12;
      x = num::invert_monotone([this](double t) { return cdf(t); }, p, 0.0,
                               2.0 * guess, tol);
      break;
    }
    default:
      throw unsupported_error("RadialLaw::quantile: sampling-only law");
  }
  // enforce the generalized-inverse property F(q) >= p at double precision
  double step = std::max(std::fabs(x), 1.0) * 1e-16;
  for (int i = 0; i < 52 && cdf(x) < p; ++i, step *= 2.0) x += step;
  return x;
}

double RadialLaw::sample_one(Rng& rng) const {
  switch (family_) {
    case Family::point_mass:
      return p1_;
    case Family::gamma:
      return rng.gamma(p1_);
    case Family::inverse_gamma:
      return 1.0 / rng.gamma(p1_);
    case Family::gig_t: {
      // R = sqrt(chi2_2 * nu / chi2_nu)
      const double e = rng.exponential();
      const double g = rng.gamma(0.5 * p1_);
      return std::sqrt(e * p1_ / g);
    }
    case Family::k_product:
      return rng.gamma(static_cast<double>(dim_)) * rng.gamma(p1_);
    case Family::dagum:
    case Family::positive_weibull:
      return quantile(rng.uniform());
    case Family::kotz:
      return std::pow(rng.gamma(p1_ / p3_) / p2_, 0.5 / p3_);
    case Family::positive_stable:
      return rng.positive_stable(p1_);
    case Family::erlang_ratio:
      return rng.gamma(static_cast<double>(dim_)) / inner_->sample_one(rng);
  }
  throw std::logic_error("RadialLaw::sample_one: unreachable");
}

std::vector<double> RadialLaw::sample(RngStream stream, std::size_t n,
                                      Exec exec) const {
  std::vector<double> out(n);
  for_each_index(n, exec, [&](std::size_t i) {
    Rng rng(stream, i);
    out[i] = sample_one(rng);
  });
  return out;
}

std::optional<double> RadialLaw::lower_tail_index() const {
  switch (family_) {
    case Family::dagum:
      return p1_ * p2_;
    case Family::positive_weibull:
      return p1_;
    case Family::gamma:
      return p1_;
    case Family::k_product:
      return std::min(p1_, static_cast<double>(dim_));
    case Family::kotz:
      return 2.0 * p1_;
    case Family::gig_t:
      return 2.0;  // F(x) ~ x^2/2 near 0
    default:
      return std::nullopt;  // rapidly varying or degenerate at 0
  }
}

UpperTailClass RadialLaw::upper_tail_class() const {
  using Kind = UpperTailClass::Kind;
  switch (family_) {
    case Family::point_mass:
      return {Kind::bounded, 0.0};
    case Family::gig_t:
      return {Kind::regularly_varying, -p1_};
    case Family::dagum:
      return {Kind::regularly_varying, -p1_};
    case Family::inverse_gamma:
      return {Kind::regularly_varying, -p1_};
    case Family::positive_stable:
      return {Kind::regularly_varying, -p1_};
    case Family::erlang_ratio: {
      // Gamma(d)/H inherits a heavy tail from 1/H when H has a regularly
      // varying lower tail.
      if (auto idx = inner_->lower_tail_index())
        return {Kind::regularly_varying, -*idx};
      return {Kind::gumbel_mda, 0.0};
    }
    default:
      return {Kind::gumbel_mda, 0.0};
  }
}

double RadialLaw::gumbel_aux(double x) const {
  if (upper_tail_class().kind != UpperTailClass::Kind::gumbel_mda)
    throw std::domain_error("gumbel_aux: law is not in the Gumbel MDA");
  if (!(x > 0.0)) throw std::domain_error("gumbel_aux: requires x > 0");
  const double ls_x = log_survival(x);
  // the integrand exp(lnS(t) - lnS(x)) decays on the scale of a(x) itself,
  // which is far below x deep in the tail; probe for a window that contains
  // all mass above e^{-45} and integrate over it
  double delta = std::max(1e-8 * std::max(x, 1.0), 1e-12);
  for (int k = 0; log_survival(x + delta) - ls_x > -45.0; ++k) {
    delta *= 2.0;
    if (k > 400)
      throw accuracy_error("gumbel_aux: survival does not decay", 0.0);
  }
  return num::integrate(
      [this, ls_x](double t) { return std::exp(log_survival(t) - ls_x); }, x,
      x + delta);
}

std::optional<double> RadialLaw::gumbel_aux_rv_index() const {
  if (upper_tail_class().kind != UpperTailClass::Kind::gumbel_mda)
    return std::nullopt;
  switch (family_) {
    case Family::positive_weibull:
      return 1.0 - p1_;
    case Family::gamma:
      return 0.0;
    case Family::kotz:
      return 1.0 - 2.0 * p3_;
    case Family::k_product:
      return 0.5;  // survival ~ poly * exp(-2 sqrt(x))
    default:
      return std::nullopt;
  }
}

std::optional<double> RadialLaw::mean() const {
  switch (family_) {
    case Family::point_mass:
      return p1_;
    case Family::gamma:
      return p1_;
    case Family::inverse_gamma:
      if (p1_ > 1.0) return 1.0 / (p1_ - 1.0);
      return std::nullopt;
    case Family::gig_t: {
      const double nu = p1_;
      if (nu <= 1.0) return std::nullopt;
      // E sqrt(E nu / G) with E ~ Exp(1), G ~ Gamma(nu/2)
      return std::sqrt(nu) *
             std::exp(num::log_gamma(1.5) + num::log_gamma(0.5 * (nu - 1.0)) -
                      num::log_gamma(0.5 * nu));
    }
    case Family::k_product:
      return static_cast<double>(dim_) * p1_;
    case Family::dagum: {
      const double a = p1_, b = p2_, s = p3_;
      if (a <= 1.0) return std::nullopt;
      return s * b *
             std::exp(num::log_gamma(b + 1.0 / a) + num::log_gamma(1.0 - 1.0 / a) -
                      num::log_gamma(b + 1.0));
    }
    case Family::positive_weibull:
      return std::exp(num::log_gamma(1.0 + 1.0 / p1_));
    case Family::kotz: {
      const double n = p1_, b = p2_, xi = p3_;
      return std::pow(b, -0.5 / xi) *
             std::exp(num::log_gamma(n / xi + 0.5 / xi) -
                      num::log_gamma(n / xi));
    }
    case Family::positive_stable:
      return std::nullopt;  // infinite for alpha < 1
    case Family::erlang_ratio:
      if (inner_->family() == Family::point_mass)
        return static_cast<double>(dim_) / inner_->param(0);
      return std::nullopt;
  }
  return std::nullopt;
}

std::string RadialLaw::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::point_mass: os << "pointmass(" << p1_ << ")"; break;
    case Family::gamma: os << "gamma(" << p1_ << ")"; break;
    case Family::inverse_gamma: os << "invgamma(" << p1_ << ")"; break;
    case Family::gig_t: os << "gigt(" << p1_ << ")"; break;
    case Family::k_product:
      os << "kproduct(" << dim_ << "," << p1_ << ")";
      break;
    case Family::dagum:
      os << "dagum(" << p1_ << "," << p2_ << "," << p3_ << ")";
      break;
    case Family::positive_weibull: os << "pweibull(" << p1_ << ")"; break;
    case Family::kotz:
      os << "kotz(" << p1_ << "," << p2_ << "," << p3_ << ")";
      break;
    case Family::positive_stable: os << "pstable(" << p1_ << ")"; break;
    case Family::erlang_ratio:
      os << "erlangratio(" << dim_ << "," << inner_->describe() << ")";
      break;
  }
  return os.str();
}

bool RadialLaw::operator==(const RadialLaw& o) const {
  if (family_ != o.family_ || dim_ != o.dim_ || p1_ != o.p1_ ||
      p2_ != o.p2_ || p3_ != o.p3_)
    return false;
  if (static_cast<bool>(inner_) != static_cast<bool>(o.inner_)) return false;
  return !inner_ || *inner_ == *o.inner_;
}

}  // namespace tailorder::radial
