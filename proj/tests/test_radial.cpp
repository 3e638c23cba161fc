#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "tailorder/numerics.hpp"
#include "tailorder/radial.hpp"

namespace num = tailorder::numerics;
using tailorder::Rng;
using tailorder::RngStream;
using tailorder::unsupported_error;
using tailorder::radial::RadialLaw;
using tailorder::radial::UpperTailClass;

namespace {

// index-consistency helper: log-log slope of the cdf near 0
double cdf_slope(const RadialLaw& law, double lo = 1e-6, double hi = 1e-3) {
  std::vector<double> xs, ys;
  for (int i = 0; i < 12; ++i) {
    const double x = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / 11.0);
    xs.push_back(x);
    ys.push_back(law.cdf(x));
  }
  return num::fit_loglog_slope(xs, ys).slope;
}

}  // namespace

TEST_CASE("cdf spot values") {
  CHECK(RadialLaw::dagum(1, 1, 1).cdf(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(RadialLaw::point_mass(2.0).cdf(1.9) == 0.0);
  CHECK(RadialLaw::point_mass(2.0).cdf(2.0) == 1.0);
  // Kotz(1,1,1) has density 2 t exp(-t^2): F(1) = 1 - e^{-1}
  CHECK(RadialLaw::kotz(1, 1, 1).cdf(1.0) ==
        doctest::Approx(-std::expm1(-1.0)).epsilon(1e-12));
  const double quad = oracles::simpson(
      [](double t) { return 2.0 * t * std::exp(-t * t); }, 0.0, 1.0);
  CHECK(RadialLaw::kotz(1, 1, 1).cdf(1.0) == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("survival spot values") {
  const RadialLaw kotz = RadialLaw::kotz(1.5, 2.0, 0.7);
  for (double x : {0.3, 1.0, 2.5}) {
    const double expect = num::regularized_gamma_q(
        1.5 / 0.7, 2.0 * std::pow(x, 1.4));
    CHECK(kotz.survival(x) == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(RadialLaw::positive_weibull(1.5).survival(2.0) ==
        doctest::Approx(std::exp(-std::pow(2.0, 1.5))).epsilon(1e-13));
  CHECK(RadialLaw::gamma(1.0).survival(3.0) ==
        doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
}

TEST_CASE("quantile spot values") {
  CHECK(RadialLaw::dagum(1, 1, 1).quantile(0.5) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(RadialLaw::positive_weibull(2.0).quantile(-std::expm1(-1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(RadialLaw::gamma(1.0).quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(RadialLaw::gamma(1.0).quantile(1.0), std::domain_error);
}

TEST_CASE("kproduct quantile against Monte Carlo median") {
  const RadialLaw law = RadialLaw::k_product(2, 1.5);
  const double q = law.quantile(0.5);
  const std::size_t n = 1000000;
  const auto xs = law.sample({99, 0}, n);
  std::size_t below = 0;
  for (double x : xs) below += x <= q ? 1 : 0;
  const double phat = static_cast<double>(below) / n;
  // binomial SE at p = 1/2
  CHECK(std::fabs(phat - 0.5) <= 3.0 * 0.5 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("cdf properties per family") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  auto make = [&](int fam) -> RadialLaw {
    switch (fam) {
      case 0: return RadialLaw::point_mass(u(gen));
      case 1: return RadialLaw::gamma(u(gen));
      case 2: return RadialLaw::inverse_gamma(u(gen));
      case 3: return RadialLaw::gig_t(1.0 + 2.0 * u(gen));
      case 4: return RadialLaw::dagum(u(gen), u(gen), u(gen));
      case 5: return RadialLaw::positive_weibull(u(gen));
      default: return RadialLaw::kotz(u(gen), u(gen), u(gen));
    }
  };
  for (int fam = 0; fam < 7; ++fam) {
    for (int rep = 0; rep < 150; ++rep) {
      const RadialLaw law = make(fam);
      double prev = -1.0;
      const double scale = law.mean().value_or(1.0);
      for (int i = 0; i <= 8; ++i) {
        const double x = scale * i / 4.0;
        const double f = law.cdf(x);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        CHECK(f >= prev);
        prev = f;
        if (law.family() != tailorder::radial::Family::point_mass)
          CHECK(law.cdf(x) + law.survival(x) ==
                doctest::Approx(1.0).epsilon(1e-12));
      }
      if (fam == 0) continue;  // quantile bracket check needs a density
      for (double p : {0.1, 0.5, 0.9}) {
        const double q = law.quantile(p);
        CHECK(law.cdf(q) >= p);
        const double eps = 1e-9 * (1.0 + q);
        if (q > eps) CHECK(law.cdf(q - eps) < p);
      }
    }
  }
  // k_product: quadrature-backed cdf, a few parameter draws with a wider
  // bracket tolerance
  for (int rep = 0; rep < 5; ++rep) {
    const RadialLaw law = RadialLaw::k_product(2 + rep % 2, u(gen));
    double prev = -1.0;
    for (double x : {0.1, 0.7, 2.0, 5.0, 11.0}) {
      const double f = law.cdf(x);
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
      CHECK(f >= prev - 1e-9);
      CHECK(f + law.survival(x) == doctest::Approx(1.0).epsilon(1e-8));
      prev = f;
    }
    const double q = law.quantile(0.5);
    CHECK(law.cdf(q) >= 0.5 - 1e-8);
    CHECK(law.cdf(q - 1e-6 * (1.0 + q)) < 0.5 + 1e-8);
  }
}

TEST_CASE("sampler matches analytic mean") {
  const std::size_t n = 100000;
  auto check_mean = [n](const RadialLaw& law, std::uint64_t stream) {
    const auto xs = law.sample({2024, stream}, n);
    const double m = oracles::mean(xs);
    const double se = oracles::sample_sd(xs) / std::sqrt(static_cast<double>(n));
    REQUIRE(law.mean().has_value());
    CHECK(std::fabs(m - *law.mean()) <= 4.0 * se);
  };
  check_mean(RadialLaw::gamma(2.3), 1);
  check_mean(RadialLaw::inverse_gamma(3.5), 2);
  check_mean(RadialLaw::gig_t(5.0), 3);
  check_mean(RadialLaw::k_product(2, 1.5), 4);
  check_mean(RadialLaw::dagum(2.5, 1.2, 1.5), 5);
  check_mean(RadialLaw::positive_weibull(1.5), 6);
  check_mean(RadialLaw::kotz(1, 1, 1), 7);
}

TEST_CASE("sampler distribution (KS)") {
  const std::size_t n = 100000;
  {
    const RadialLaw law = RadialLaw::kotz(1, 1, 1);
    CHECK(oracles::ks_statistic(law.sample({5, 1}, n), [](double x) {
            return -std::expm1(-x * x);
          }) <= 0.01);
  }
  {
    const RadialLaw law = RadialLaw::dagum(0.6, 1.8, 1.0);
    CHECK(oracles::ks_statistic(law.sample({5, 2}, n), [&law](double x) {
            return law.cdf(x);
          }) <= 0.01);
  }
  {
    const RadialLaw law = RadialLaw::point_mass(2.0);
    const auto xs = law.sample({5, 3}, 5);
    for (double x : xs) CHECK(x == 2.0);
  }
}

TEST_CASE("positive stable draws have the right Laplace transform") {
  const std::size_t n = 200000;
  for (double a : {0.5, 0.7}) {
    const auto xs = RadialLaw::positive_stable(a).sample({31, 1}, n);
    for (double s : {0.5, 1.0, 2.0}) {
      std::vector<double> lt(n);
      for (std::size_t i = 0; i < n; ++i) lt[i] = std::exp(-s * xs[i]);
      const double m = oracles::mean(lt);
      const double se = oracles::sample_sd(lt) / std::sqrt(static_cast<double>(n));
      CHECK(std::fabs(m - std::exp(-std::pow(s, a))) <= 4.0 * se);
    }
  }
}

TEST_CASE("lower tail index") {
  CHECK(*RadialLaw::dagum(0.6, 1.8, 1.0).lower_tail_index() ==
        doctest::Approx(1.08));
  CHECK(*RadialLaw::positive_weibull(1.5).lower_tail_index() ==
        doctest::Approx(1.5));
  CHECK(*RadialLaw::gamma(1.7).lower_tail_index() == doctest::Approx(1.7));
  CHECK(*RadialLaw::k_product(2, 1.5).lower_tail_index() ==
        doctest::Approx(1.5));
  CHECK(!RadialLaw::point_mass(1.0).lower_tail_index());
  CHECK(!RadialLaw::inverse_gamma(2.0).lower_tail_index());
}

TEST_CASE("lower tail index consistency with the cdf slope") {
  CHECK(cdf_slope(RadialLaw::dagum(0.6, 1.8, 1.0)) ==
        doctest::Approx(1.08).epsilon(0.02));
  CHECK(cdf_slope(RadialLaw::positive_weibull(1.5)) ==
        doctest::Approx(1.5).epsilon(0.02));
  CHECK(cdf_slope(RadialLaw::gamma(1.7)) == doctest::Approx(1.7).epsilon(0.02));
  CHECK(cdf_slope(RadialLaw::kotz(1, 1, 1)) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(cdf_slope(RadialLaw::gig_t(4.0)) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(cdf_slope(RadialLaw::k_product(2, 1.5)) ==
        doctest::Approx(1.5).epsilon(0.02));
}

TEST_CASE("upper tail classification") {
  using Kind = UpperTailClass::Kind;
  CHECK(RadialLaw::gig_t(4.0).upper_tail_class().kind == Kind::regularly_varying);
  CHECK(RadialLaw::gig_t(4.0).upper_tail_class().rv_index ==
        doctest::Approx(-4.0));
  CHECK(RadialLaw::kotz(1, 1, 1).upper_tail_class().kind == Kind::gumbel_mda);
  CHECK(RadialLaw::point_mass(1.0).upper_tail_class().kind == Kind::bounded);
  CHECK(RadialLaw::dagum(0.6, 1.8, 1).upper_tail_class().rv_index ==
        doctest::Approx(-0.6));
  CHECK(RadialLaw::k_product(2, 1.5).upper_tail_class().kind ==
        Kind::gumbel_mda);
}

TEST_CASE("gumbel auxiliary function") {
  // unit exponential is memoryless: a(x) = 1
  for (double x : {0.5, 2.0, 10.0}) {
    CHECK(RadialLaw::gamma(1.0).gumbel_aux(x) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  // Kotz(1,1,1): survival exp(-x^2), a(x) ~ 1/(2x)
  const double a10 = RadialLaw::kotz(1, 1, 1).gumbel_aux(10.0);
  CHECK(std::fabs(a10 - 0.05) / 0.05 <= 0.05);
  // Kotz(1,1,0.5): a is slowly varying (auxiliary RV index 1 - 2 xi = 0)
  {
    const RadialLaw law = RadialLaw::kotz(1, 1, 0.5);
    std::vector<double> xs, ys;
    for (int i = 0; i < 10; ++i) {
      const double x = std::pow(10.0, 2.0 + 2.0 * i / 9.0);
      xs.push_back(x);
      ys.push_back(law.gumbel_aux(x));
    }
    CHECK(std::fabs(num::fit_loglog_slope(xs, ys).slope) <= 0.05);
    CHECK(*law.gumbel_aux_rv_index() == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(RadialLaw::dagum(1, 1, 1).gumbel_aux(5.0), std::domain_error);
}

TEST_CASE("sampling-only laws reject distribution queries") {
  const RadialLaw st = RadialLaw::positive_stable(0.5);
  CHECK_THROWS_AS(st.cdf(1.0), unsupported_error);
  CHECK_THROWS_AS(st.quantile(0.5), unsupported_error);
  const RadialLaw er = RadialLaw::erlang_ratio(2, RadialLaw::point_mass(1.0));
  CHECK_THROWS_AS(er.cdf(1.0), unsupported_error);
  Rng rng({1, 1}, 0);
  CHECK(er.sample_one(rng) > 0.0);
}
