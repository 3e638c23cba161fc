#include "tailorder/generators.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <sstream>
#include <vector>

#include "tailorder/numerics.hpp"

namespace tailorder::generators {

namespace num = tailorder::numerics;
using radial::Family;
using radial::RadialLaw;

namespace {

// Split quantiles {0.5, 0.9, 0.99} used as quadrature breakpoints. For laws
// with a numeric quantile (notably k_product, whose cdf is itself a
// quadrature) these are expensive, so memoize per distinct law.
std::array<double, 3> williamson_splits(const RadialLaw& law) {
  static std::mutex mu;
  static std::vector<std::pair<RadialLaw, std::array<double, 3>>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [l, q] : cache)
      if (l == law) return q;
  }
  std::array<double, 3> q{law.quantile(0.5), law.quantile(0.9),
                          law.quantile(0.99)};
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace_back(law, q);
  if (cache.size() > 64) cache.erase(cache.begin());
  return q;
}

// tight tolerances keep the inversion of a quadrature-backed psi meaningful
num::QuadratureSpec williamson_spec() {
  num::QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-13;
  return spec;
}

double williamson_density_route(const RadialLaw& law, int d, double s) {
  const auto q = williamson_splits(law);
  std::vector<double> pts = {s};
  for (double v : q)
    if (v > pts.back() * (1.0 + 1e-12)) pts.push_back(v);
  auto integrand = [&law, d, s](double r) {
    return std::pow(1.0 - s / r, d - 1) * law.pdf(r);
  };
  const auto spec = williamson_spec();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += num::integrate(integrand, pts[i], pts[i + 1], spec);
  total += num::integrate(integrand, pts.back(), num::kInf, spec);
  return std::min(total, 1.0);
}

double williamson_survival_route(const RadialLaw& law, int d, double s) {
  // psi(s) = (d-1) s int_s^inf S(r) (1 - s/r)^{d-2} r^{-2} dr
  auto integrand = [&law, d, s](double r) {
    return law.survival(r) * std::pow(1.0 - s / r, d - 2) / (r * r);
  };
  return std::min(
      (d - 1) * s * num::integrate(integrand, s, num::kInf, williamson_spec()),
      1.0);
}

}  // namespace

double williamson_transform(const RadialLaw& law, int d, double s) {
  if (d < 2) throw std::domain_error("williamson_transform: requires d >= 2");
  if (s < 0.0) throw std::domain_error("williamson_transform: requires s >= 0");
  if (!law.supports_cdf())
    throw unsupported_error(
        "williamson_transform: law does not expose a distribution function");
  if (law.cdf(0.0) > 0.0)
    throw std::domain_error("williamson_transform: law has an atom at 0");
  if (s == 0.0) return 1.0;
  if (law.family() == Family::point_mass) {
    const double r0 = law.param(0);
    return s >= r0 ? 0.0 : std::pow(1.0 - s / r0, d - 1);
  }
  if (law.has_density()) return williamson_density_route(law, d, s);
  return williamson_survival_route(law, d, s);
}

RadialLaw frailty_to_radial(int d, const RadialLaw& frailty) {
  if (d < 2) throw std::domain_error("frailty_to_radial: requires d >= 2");
  if (frailty.family() == Family::inverse_gamma)
    return RadialLaw::k_product(d, frailty.param(0));
  return RadialLaw::erlang_ratio(d, frailty);
}

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

Generator Generator::acig(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("acig: requires alpha > 0");
  return Generator(Kind::acig, alpha);
}

Generator Generator::joe2000(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("joe2000: requires alpha in (0,1)");
  return Generator(Kind::joe2000, alpha);
}

Generator Generator::gumbel(double theta) {
  if (!(theta >= 1.0)) throw std::domain_error("gumbel: requires theta >= 1");
  return Generator(Kind::gumbel, theta);
}

Generator Generator::williamson(RadialLaw law, int d) {
  if (d < 2) throw std::domain_error("williamson: requires d >= 2");
  Generator g(Kind::williamson, 0.0);
  g.dim_ = d;
  g.law_ = std::make_shared<const RadialLaw>(std::move(law));
  if (!g.law_->supports_cdf())
    throw unsupported_error("williamson: law must expose a cdf");
  return g;
}

namespace {

double acig_psi(double alpha, double s) {
  if (s == 0.0) return 1.0;
  if (s < 1e-60) {
    // small-s expansion of the Bessel form; K would overflow for large alpha
    if (alpha > 1.000001) return 1.0 - s / (alpha - 1.0);
    if (alpha < 0.999999) {
      const double lead = std::exp(num::log_gamma(1.0 - alpha) -
                                   num::log_gamma(alpha) + alpha * std::log(s));
      return 1.0 - lead / alpha + s / (1.0 - alpha);
    }
    return 1.0 + s * std::log(s);
  }
  const double root = std::sqrt(s);
  const double lg = std::log(2.0) - num::log_gamma(alpha) +
                    0.5 * alpha * std::log(s);
  return std::exp(lg) * num::bessel_k(alpha, 2.0 * root);
}

}  // namespace

double Generator::psi(double s) const {
  if (s < 0.0) throw std::domain_error("Generator::psi: requires s >= 0");
  switch (kind_) {
    case Kind::acig:
      return std::min(acig_psi(shape_, s), 1.0);
    case Kind::joe2000:
      return s == 0.0 ? 1.0
                      : num::regularized_gamma_q(1.0 / shape_,
                                                 std::pow(s, shape_));
    case Kind::gumbel:
      return std::exp(-std::pow(s, 1.0 / shape_));
    case Kind::williamson:
      return williamson_transform(*law_, dim_, s);
  }
  throw std::logic_error("Generator::psi: unreachable");
}

double Generator::psi_inverse(double u) const {
  if (!(u > 0.0)) {
    if (u == 0.0) return std::numeric_limits<double>::infinity();
    throw std::domain_error("Generator::psi_inverse: requires u in (0,1]");
  }
  if (u > 1.0) throw std::domain_error("Generator::psi_inverse: requires u <= 1");
  if (u == 1.0) return 0.0;
  if (kind_ == Kind::gumbel) return std::pow(-std::log(u), shape_);
  // a quadrature-backed psi carries ~1e-12 evaluation noise, which bounds
  // the reachable residual; the closed-form families resolve to 1e-12
  const double tol = kind_ == Kind::williamson ? 1e-11 : 1e-12;
  return num::invert_monotone([this](double s) { return psi(s); }, u, 0.0, 1.0,
                              tol);
}

bool Generator::d_monotone_spot_check(int d) const {
  if (d < 2) throw std::domain_error("d_monotone_spot_check: requires d >= 2");
  const double s_half = psi_inverse(0.5);
  const double lo = 0.05 * s_half, hi = 5.0 * s_half;
  const double ratio = std::pow(hi / lo, 1.0 / 19.0);
  double s = lo;
  for (int g = 0; g < 20; ++g, s *= ratio) {
    const double h = 0.05 * s + 1e-3 * s_half;
    for (int k = 0; k < d; ++k) {
      double diff = 0.0, mag = 0.0, binom = 1.0;
      for (int j = 0; j <= k; ++j) {
        const double term = binom * psi(s + j * h);
        diff = ((k - j) % 2 == 0) ? diff + term : diff - term;
        mag += std::fabs(term);
        binom *= static_cast<double>(k - j) / (j + 1);
      }
      const double signed_diff = (k % 2 == 0) ? diff : -diff;
      if (signed_diff < -(1e-7 * mag + 1e-9)) return false;
    }
  }
  return true;
}

std::string Generator::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::acig: os << "acig(" << shape_ << ")"; break;
    case Kind::joe2000: os << "joe2000(" << shape_ << ")"; break;
    case Kind::gumbel: os << "gumbel(" << shape_ << ")"; break;
    case Kind::williamson:
      os << "williamson:" << law_->describe() << ":d=" << dim_;
      break;
  }
  return os.str();
}

}  // namespace tailorder::generators
