#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tailorder/sampling.hpp"
#include "tailorder/tailmetrics.hpp"

namespace tmt = tailorder::tailmetrics;
namespace samp = tailorder::sampling;
using tailorder::Side;
using tailorder::copulas::CopulaModel;
using tailorder::copulas::PickandsFn;
using tailorder::estimation_error;
using tailorder::generators::Generator;
using tailorder::radial::RadialLaw;

TEST_CASE("derived measures") {
  CHECK(tmt::derived_measures(1.0) == std::pair{1.0, 1.0});
  CHECK(tmt::derived_measures(2.0) == std::pair{0.5, 0.0});
  const auto [eta, chibar] = tmt::derived_measures(4.0 / 3.0);
  CHECK(eta == doctest::Approx(0.75));
  CHECK(chibar == doctest::Approx(0.5));
  CHECK_THROWS_AS(tmt::derived_measures(0.9), std::domain_error);
}

TEST_CASE("catalog entries") {
  {
    const auto e = tmt::tail_order_catalog(CopulaModel::gaussian(0.5));
    CHECK(*e.kappa_lower == doctest::Approx(4.0 / 3.0));
    CHECK(*e.kappa_upper == doctest::Approx(4.0 / 3.0));
    CHECK(*e.lambda_upper == doctest::Approx(0.0));
  }
  {
    const auto e =
        tmt::tail_order_catalog(CopulaModel::archimedean(2, Generator::acig(1.5)));
    CHECK(*e.kappa_upper == doctest::Approx(1.5));
    CHECK(*e.kappa_lower == doctest::Approx(std::numbers::sqrt2));
    CHECK(*e.moment_index == doctest::Approx(1.5));
  }
  {
    // upper order saturates at d
    const auto e =
        tmt::tail_order_catalog(CopulaModel::archimedean(2, Generator::acig(3.5)));
    CHECK(*e.kappa_upper == doctest::Approx(2.0));
  }
  {
    const auto e = tmt::tail_order_catalog(
        CopulaModel::archimedean(2, Generator::gumbel(2.0)));
    CHECK(*e.kappa_lower == doctest::Approx(std::numbers::sqrt2));
    CHECK(*e.kappa_upper == doctest::Approx(1.0));
    CHECK(*e.lambda_upper == doctest::Approx(2.0 - std::numbers::sqrt2));
  }
  {
    const auto e = tmt::tail_order_catalog(
        CopulaModel::archimedean(3, Generator::joe2000(0.5)));
    CHECK(*e.kappa_upper == doctest::Approx(1.5));
    CHECK(*e.kappa_lower == doctest::Approx(std::pow(3.0, 0.5)));
    CHECK(*e.moment_index == doctest::Approx(1.5));
  }
  {
    const auto e = tmt::tail_order_catalog(CopulaModel::archimedean(
        2, Generator::williamson(RadialLaw::dagum(0.6, 1.8, 1.0), 2)));
    CHECK(*e.kappa_upper == doctest::Approx(1.08));
    CHECK(*e.kappa_lower == doctest::Approx(1.0));
    CHECK(*e.lambda_lower == doctest::Approx(std::pow(2.0, -0.6)));
  }
  {
    const auto e = tmt::tail_order_catalog(CopulaModel::archimedean(
        2, Generator::williamson(RadialLaw::positive_weibull(1.5), 2)));
    CHECK(*e.kappa_upper == doctest::Approx(1.5));
    // auxiliary index is 1 - alpha = -0.5, outside (0,1): no kappa_L claim
    CHECK(!e.kappa_lower);
  }
  {
    // Williamson over the K-product law reproduces the ACIG entries
    const auto e = tmt::tail_order_catalog(CopulaModel::archimedean(
        2, Generator::williamson(RadialLaw::k_product(2, 1.5), 2)));
    CHECK(*e.kappa_upper == doctest::Approx(1.5));
    CHECK(*e.kappa_lower == doctest::Approx(std::numbers::sqrt2));
    CHECK(*e.moment_index == doctest::Approx(1.5));
  }
  {
    const auto e = tmt::tail_order_catalog(CopulaModel::student(0.5, 4.0));
    CHECK(*e.kappa_lower == doctest::Approx(1.0));
    CHECK(*e.kappa_upper == doctest::Approx(1.0));
  }
  {
    const auto e = tmt::tail_order_catalog(CopulaModel::kotz(0.5, 1.0, 1.0, 0.5));
    CHECK(*e.kappa_upper == doctest::Approx(std::sqrt(4.0 / 3.0)));
  }
  {
    const auto e = tmt::tail_order_catalog(
        CopulaModel::extreme_value(PickandsFn::logistic(2.0, 2)));
    CHECK(*e.kappa_lower == doctest::Approx(std::numbers::sqrt2));
    CHECK(*e.kappa_upper == doctest::Approx(1.0));
    CHECK(*e.lambda_upper == doctest::Approx(2.0 - std::numbers::sqrt2));
  }
  {
    const auto e = tmt::tail_order_catalog(CopulaModel::independence(3));
    CHECK(*e.kappa_lower == doctest::Approx(3.0));
    const auto c = tmt::tail_order_catalog(CopulaModel::comonotone(3));
    CHECK(*c.lambda_upper == doctest::Approx(1.0));
  }
}

TEST_CASE("diagonal regression estimator") {
  {
    const CopulaModel m = CopulaModel::independence(3);
    const auto est = tmt::estimate_tail_order_diagonal(
        [&m](double u) { return m.diagonal(u); }, Side::lower,
        tmt::GridSpec::analytic(), 3);
    CHECK(est.kappa == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(est.eta == doctest::Approx(1.0 / est.kappa));
    CHECK(est.chi_bar == doctest::Approx(2.0 / est.kappa - 1.0));
  }
  {
    const CopulaModel m = CopulaModel::archimedean(2, Generator::gumbel(2.0));
    const auto est = tmt::estimate_tail_order_diagonal(
        [&m](double u) { return m.diagonal(u); }, Side::lower,
        tmt::GridSpec::analytic(), 2);
    CHECK(est.kappa == doctest::Approx(std::numbers::sqrt2).epsilon(1e-9));
  }
  {
    const CopulaModel m = CopulaModel::gaussian(0.5);
    const auto est = tmt::estimate_tail_order_diagonal(
        [&m](double u) { return m.diagonal(u); }, Side::lower,
        tmt::GridSpec::analytic(), 2);
    CHECK(std::fabs(est.kappa - 4.0 / 3.0) <= 0.1);
  }
  // zero diagonals are dropped; too few survivors raise
  CHECK_THROWS_AS(tmt::estimate_tail_order_diagonal(
                      [](double) { return 0.0; }, Side::lower,
                      tmt::GridSpec::monte_carlo(), 2),
                  estimation_error);
  {
    int calls = 0;
    const auto est = tmt::estimate_tail_order_diagonal(
        [&calls](double u) {
          ++calls;
          return (calls <= 3) ? 0.0 : u;  // first three grid points vanish
        },
        Side::lower, tmt::GridSpec::monte_carlo(), 2);
    CHECK(est.dropped_points == 3);
  }
}

TEST_CASE("catalog and estimator agree for analytic diagonals") {
  struct Case {
    CopulaModel model;
    Side side;
    double tol;
  };
  const std::vector<Case> cases = {
      {CopulaModel::gaussian(0.3), Side::lower, 0.1},
      {CopulaModel::archimedean(2, Generator::acig(1.5)), Side::upper, 0.1},
      {CopulaModel::archimedean(2, Generator::acig(1.5)), Side::lower, 0.1},
      {CopulaModel::archimedean(2, Generator::gumbel(2.0)), Side::lower, 1e-8},
      {CopulaModel::extreme_value(PickandsFn::logistic(2.0, 3)), Side::lower,
       1e-8},
      {CopulaModel::independence(2), Side::lower, 1e-8},
      {CopulaModel::comonotone(2), Side::lower, 1e-8},
      {CopulaModel::archimedean(2, Generator::joe2000(0.5)), Side::upper, 0.05},
      {CopulaModel::archimedean(2, Generator::joe2000(0.5)), Side::lower, 0.05},
  };
  for (const auto& c : cases) {
    const auto cat = tmt::tail_order_catalog(c.model);
    const double target =
        c.side == Side::lower ? *cat.kappa_lower : *cat.kappa_upper;
    const auto est = tmt::estimate_tail_order_diagonal(
        [&](double u) {
          return c.side == Side::lower ? c.model.diagonal(u)
                                       : c.model.survival_diagonal(u);
        },
        c.side, tmt::GridSpec::analytic(), c.model.dim());
    CHECK(std::fabs(est.kappa - target) <= c.tol);
  }
}

TEST_CASE("lambda estimator") {
  const CopulaModel como = CopulaModel::comonotone(2);
  CHECK(tmt::estimate_lambda([&como](double u) { return como.diagonal(u); },
                            tmt::GridSpec::monte_carlo()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const CopulaModel ind = CopulaModel::independence(2);
  CHECK(tmt::estimate_lambda([&ind](double u) { return ind.diagonal(u); },
                            tmt::GridSpec::monte_carlo()) <= 1e-2);
  CHECK_THROWS_AS(
      tmt::estimate_lambda([](double) { return 0.0; }, tmt::GridSpec::monte_carlo()),
      estimation_error);
}

TEST_CASE("mda gumbel ratio") {
  // Kotz xi = 1 has survival exp(-x^2): the ratio is b^2 = 2/(1+rho) exactly
  CHECK(tmt::mda_gumbel_tail_order(RadialLaw::kotz(1, 1, 1), 0.0, 2, 50.0) ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK(tmt::mda_gumbel_tail_order(RadialLaw::kotz(1, 1, 1), 0.5, 2, 50.0) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-6));
  // comonotone scale factor
  CHECK(tmt::mda_gumbel_tail_order(RadialLaw::kotz(1, 1, 1), 1.0, 2, 50.0) ==
        doctest::Approx(1.0));
  // multivariate scale factor b_{rho,d}
  const double d4 = tmt::mda_gumbel_tail_order(RadialLaw::kotz(1, 1, 1), 0.5, 4,
                                              50.0);
  CHECK(d4 == doctest::Approx(4.0 / 2.5).epsilon(1e-6));
  // scale invariance: c-rescaled Kotz law evaluated at c*r
  const double base =
      tmt::mda_gumbel_tail_order(RadialLaw::kotz(1.0, 1.0, 1.0), 0.5, 2, 50.0);
  const double c = 3.0;
  const double scaled = tmt::mda_gumbel_tail_order(
      RadialLaw::kotz(1.0, 1.0 / (c * c), 1.0), 0.5, 2, c * 50.0);
  CHECK(std::fabs(base - scaled) < 1e-3);
  // errors
  CHECK_THROWS_AS(tmt::mda_gumbel_tail_order(RadialLaw::dagum(1, 1, 1), 0.5, 2,
                                            50.0),
                  std::domain_error);
  CHECK_THROWS_AS(tmt::mda_gumbel_tail_order(RadialLaw::kotz(1, 1, 1), 0.5, 2,
                                            1.0),
                  std::domain_error);
  // the K-product survival is quadrature-backed and underflows far out;
  // the evaluation-point error asks for a smaller r
  CHECK_THROWS_AS(tmt::mda_gumbel_tail_order(RadialLaw::k_product(2, 1.5), 0.5,
                                             2, 1e6),
                  tailorder::accuracy_error);
}

TEST_CASE("mc estimate recovers the Joe2000 upper order") {
  // survival-diagonal regression through the analytic path
  const CopulaModel m = CopulaModel::archimedean(2, Generator::joe2000(0.5));
  const auto est = tmt::estimate_tail_order_diagonal(
      [&m](double u) { return m.survival_diagonal(u); }, Side::upper,
      tmt::GridSpec::analytic(), 2);
  CHECK(std::fabs(est.kappa - 1.5) <= 0.05);
}

TEST_CASE("diagonal ordering follows the tail orders") {
  const double u = 1e-4;
  const double como = CopulaModel::comonotone(2).diagonal(u);
  const double gum =
      CopulaModel::archimedean(2, Generator::gumbel(2.0)).diagonal(u);
  const double ind = CopulaModel::independence(2).diagonal(u);
  CHECK(como > gum);
  CHECK(gum > ind);
}
