#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "tailorder/numerics.hpp"

namespace num = tailorder::numerics;
using tailorder::accuracy_error;

TEST_CASE("log_gamma values") {
  CHECK(num::log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(num::log_gamma(5.0) ==
        doctest::Approx(std::log(24.0)).epsilon(1e-13));
  CHECK(num::log_gamma(0.5) ==
        doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-13));
  // recurrence ln Gamma(x+1) = ln Gamma(x) + ln x across branch joints
  for (double x : {0.31, 0.79, 1.29, 1.71, 2.29, 3.5, 7.25, 41.0}) {
    CHECK(num::log_gamma(x + 1.0) ==
          doctest::Approx(num::log_gamma(x) + std::log(x)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(num::log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(num::log_gamma(-2.5), std::domain_error);
}

TEST_CASE("upper incomplete gamma") {
  for (double x : {0.0, 1.0, 5.0}) {
    CHECK(num::upper_incomplete_gamma(1.0, x) ==
          doctest::Approx(std::exp(-x)).epsilon(1e-12));
  }
  CHECK(num::upper_incomplete_gamma(2.0, 1.0) ==
        doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
  // Gamma(0.5, 1) = sqrt(pi) erfc(1); also cross-check by quadrature
  const double target = std::sqrt(std::numbers::pi) * std::erfc(1.0);
  CHECK(num::upper_incomplete_gamma(0.5, 1.0) ==
        doctest::Approx(target).epsilon(1e-10));
  const double quad = oracles::simpson_to_inf(
      [](double t) { return std::exp(-t) / std::sqrt(t); }, 1.0);
  CHECK(num::upper_incomplete_gamma(0.5, 1.0) ==
        doctest::Approx(quad).epsilon(1e-10));

  // Gamma(a, 0) = Gamma(a)
  for (double a : {0.3, 1.0, 2.7, 9.5}) {
    CHECK(num::upper_incomplete_gamma(a, 0.0) ==
          doctest::Approx(std::exp(num::log_gamma(a))).epsilon(1e-10));
  }
  CHECK_THROWS_AS(num::upper_incomplete_gamma(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(num::upper_incomplete_gamma(1.0, -1.0), std::domain_error);
}

TEST_CASE("log regularized gamma q matches in the overlap and extends") {
  for (double a : {0.5, 2.0, 7.3}) {
    for (double x : {0.5, 3.0, 20.0, 80.0}) {
      CHECK(num::log_regularized_gamma_q(a, x) ==
            doctest::Approx(std::log(num::regularized_gamma_q(a, x)))
                .epsilon(1e-10));
    }
  }
  // deep tail where Q underflows: ln Q(1, x) = -x exactly
  CHECK(num::log_regularized_gamma_q(1.0, 2500.0) ==
        doctest::Approx(-2500.0).epsilon(1e-12));
}

TEST_CASE("bessel_k examples and oracle") {
  // half-integer closed form
  CHECK(num::bessel_k(0.5, 1.0) ==
        doctest::Approx(std::sqrt(std::numbers::pi / 2.0) * std::exp(-1.0))
            .epsilon(1e-12));
  // symmetry in the order
  for (double nu : {0.3, 1.5, 4.2}) {
    for (double x : {0.4, 2.5, 11.0}) {
      CHECK(num::bessel_k(-nu, x) == num::bessel_k(nu, x));
    }
  }
  // series branch checked against the integral representation (test-side
  // Simpson, independent of the library's quadrature and series)
  for (double nu : {0.0, 0.5, 2.0, 3.3}) {
    for (double x : {0.8, 1.5, 2.0}) {
      const double oracle = oracles::simpson(
          [nu, x](double t) {
            return std::exp(-x * std::cosh(t)) * std::cosh(nu * t);
          },
          0.0, 30.0, 1e-13);
      CHECK(num::bessel_k(nu, x) == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
  CHECK(num::bessel_k(2.0, 2.0) == doctest::Approx(0.25375975456).epsilon(1e-9));
  CHECK_THROWS_AS(num::bessel_k(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(num::bessel_k(1.0, -3.0), std::domain_error);
}

TEST_CASE("bessel_k recurrence on a grid") {
  for (double nu : {0.2, 0.7, 1.0, 2.5, 6.1, 9.0}) {
    for (double x : {1e-4, 0.1, 1.0, 2.0, 3.0, 10.0, 50.0}) {
      const double lhs = num::bessel_k(nu + 1.0, x);
      const double rhs =
          num::bessel_k(nu - 1.0, x) + (2.0 * nu / x) * num::bessel_k(nu, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("integrate basics") {
  CHECK(num::integrate([](double x) { return x; }, 0.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(num::integrate([](double x) { return std::exp(-x); }, 0.0,
                       num::kInf) == doctest::Approx(1.0).epsilon(1e-10));
  const double erf_oracle = 0.5 * std::sqrt(std::numbers::pi);
  CHECK(num::integrate([](double x) { return std::exp(-x * x); }, 0.0,
                       num::kInf) ==
        doctest::Approx(erf_oracle).epsilon(1e-10));
  // budget exhaustion carries the best estimate reached so far
  num::QuadratureSpec tight;
  tight.abs_tol = 1e-300;
  tight.rel_tol = 1e-16;
  tight.max_subdivisions = 4;
  auto wiggly = [](double x) { return std::sqrt(x) * std::sin(40.0 * x); };
  try {
    num::integrate(wiggly, 0.0, 3.0, tight);
    FAIL("expected accuracy_error");
  } catch (const accuracy_error& e) {
    // four panels cannot resolve ~19 oscillations; the carried estimate is
    // rough but must be a finite value of plausible size (int |f| < 5.2)
    CHECK(std::isfinite(e.best_estimate));
    CHECK(std::fabs(e.best_estimate) < 5.2);
  }
}

TEST_CASE("invert_monotone examples") {
  CHECK(num::invert_monotone([](double x) { return x; }, 0.3, 0.0, 1.0,
                             1e-12) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(num::invert_monotone([](double x) { return std::exp(-x); },
                             std::exp(-2.0), 0.0, 1.0, 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK_THROWS_AS(
      num::invert_monotone([](double x) { return std::tanh(x); }, 3.0, -1.0,
                           1.0, 1e-12),
      tailorder::no_bracket_error);
  // sign-pattern violation: sin exceeds its bracket-endpoint range inside
  CHECK_THROWS_AS(
      num::invert_monotone([](double x) { return std::sin(x); }, 0.3, 0.0,
                           2.5, 1e-12),
      std::domain_error);
}

TEST_CASE("invert_monotone randomized round trips") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unif(0.1, 3.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double a = unif(gen), b = unif(gen), c = unif(gen);
    const bool decreasing = rep % 2 == 1;
    auto f = [=](double x) {
      const double v = a * x + b * x * x * x + c * std::atan(x);
      return decreasing ? -v : v;
    };
    const double x0 = unif(gen);
    const double target = f(x0);
    const double x = num::invert_monotone(f, target, 0.0, 1.0, 1e-12);
    CHECK(std::fabs(f(x) - target) <=
          1e-12 * std::max(1.0, std::fabs(target)));
  }
}

TEST_CASE("fit_loglog_slope") {
  {
    std::vector<double> x = {0.1, 0.01, 0.001};
    std::vector<double> y;
    for (double v : x) y.push_back(v * v);
    const auto fit = num::fit_loglog_slope(x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.residual_se == doctest::Approx(0.0).epsilon(1e-10));
  }
  {
    // pure power laws are exact regardless of the scale factor
    for (double c : {1e-8, 0.37, 4000.0}) {
      std::vector<double> x, y;
      for (int i = 1; i <= 9; ++i) {
        x.push_back(std::pow(10.0, -i / 2.0));
        y.push_back(c * std::pow(x.back(), 1.7));
      }
      const auto fit = num::fit_loglog_slope(x, y);
      CHECK(fit.slope == doctest::Approx(1.7).epsilon(1e-12));
    }
  }
  {
    // slope 1 with the scale absorbed by the intercept
    std::vector<double> x = {0.5, 0.05, 0.005, 0.0005};
    std::vector<double> y;
    for (double v : x) y.push_back(13.7 * v);
    CHECK(num::fit_loglog_slope(x, y).slope ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    std::vector<double> x, y;
    for (int i = 0; i < 12; ++i) {
      const double v = std::pow(10.0, -6.0 + 3.0 * i / 11.0);
      x.push_back(v);
      y.push_back(std::pow(v, 1.5) * (1.0 + 0.01 * v));
    }
    const auto fit = num::fit_loglog_slope(x, y);
    CHECK(fit.slope == doctest::Approx(1.5).epsilon(1e-4));
  }
  std::vector<double> one = {1.0};
  CHECK_THROWS_AS(num::fit_loglog_slope(one, one), std::domain_error);
  std::vector<double> x = {1.0, 2.0};
  std::vector<double> bad = {1.0, -2.0};
  CHECK_THROWS_AS(num::fit_loglog_slope(x, bad), std::domain_error);
}

TEST_CASE("normal helpers") {
  CHECK(num::normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (double p : {1e-8, 1e-4, 0.2, 0.5, 0.9, 1.0 - 1e-6}) {
    CHECK(num::normal_cdf(num::normal_quantile(p)) ==
          doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(num::normal_quantile(0.0), std::domain_error);
}

TEST_CASE("student t cdf and quantile") {
  // nu = 1 is Cauchy: T(x) = 1/2 + atan(x)/pi
  for (double x : {-3.0, -0.5, 0.0, 1.0, 8.0}) {
    CHECK(num::student_t_cdf(x, 1.0) ==
          doctest::Approx(0.5 + std::atan(x) / std::numbers::pi)
              .epsilon(1e-12));
  }
  // nu = 2 closed form: 1/2 + x / (2 sqrt(2 + x^2))
  for (double x : {-2.0, 0.3, 5.0}) {
    CHECK(num::student_t_cdf(x, 2.0) ==
          doctest::Approx(0.5 + x / (2.0 * std::sqrt(2.0 + x * x)))
              .epsilon(1e-12));
  }
  for (double p : {0.01, 0.3, 0.77, 0.999}) {
    CHECK(num::student_t_cdf(num::student_t_quantile(p, 4.0), 4.0) ==
          doctest::Approx(p).epsilon(1e-10));
  }
}
