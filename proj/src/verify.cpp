#include "tailorder/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <unistd.h>
#include <sstream>

#include "tailorder/figure1.hpp"
#include "tailorder/numerics.hpp"
#include "tailorder/sampling.hpp"
#include "tailorder/tailmetrics.hpp"

namespace tailorder::verify {

namespace num = tailorder::numerics;
namespace tm = tailorder::tailmetrics;
namespace samp = tailorder::sampling;
using copulas::CopulaModel;
using copulas::PickandsFn;
using generators::Generator;
using radial::RadialLaw;

namespace {

struct Ctx {
  Suite suite;
  std::uint64_t seed;
  std::size_t n_mc() const { return suite == Suite::full ? 1000000 : 100000; }
  CriterionResult* cur = nullptr;

  void check(const std::string& label, double observed, double target,
             double tol) {
    CheckResult c{label, observed, target, tol,
                  std::fabs(observed - target) <= tol};
    cur->checks.push_back(c);
  }
  void check_leq(const std::string& label, double observed, double bound) {
    CheckResult c{label, observed, bound, bound, observed <= bound};
    cur->checks.push_back(c);
  }
  void check_true(const std::string& label, bool ok) {
    CheckResult c{label, ok ? 1.0 : 0.0, 1.0, 0.0, ok};
    cur->checks.push_back(c);
  }
};

double ks_statistic(std::vector<double> xs,
                    const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

std::vector<double> column(const samp::SampleMatrix& m, int j) {
  std::vector<double> v(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
  return v;
}

double ks_crit(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

// --- criterion bodies -------------------------------------------------------

void criterion_gaussian_order(Ctx& c) {
  for (double rho : {0.0, 0.3, 0.5, 0.7}) {
    const CopulaModel m = CopulaModel::gaussian(rho);
    auto est = tm::estimate_tail_order_diagonal(
        [&m](double u) { return m.diagonal(u); }, Side::lower,
        tm::GridSpec::analytic(), 2);
    std::ostringstream lbl;
    lbl << "rho=" << rho;
    c.check(lbl.str(), est.kappa, 2.0 / (1.0 + rho), 0.1);
  }
}

void criterion_kotz_mda(Ctx& c) {
  for (double xi : {0.5, 1.0, 2.0}) {
    const double obs = tm::mda_gumbel_tail_order(RadialLaw::kotz(1.0, 1.0, xi),
                                                 0.5, 2, 50.0);
    std::ostringstream lbl;
    lbl << "xi=" << xi;
    c.check(lbl.str(), obs, std::pow(4.0 / 3.0, xi), 0.01);
  }
}

void criterion_ev_order(Ctx& c) {
  const std::pair<double, int> cases[] = {{1.0, 2}, {2.0, 2}, {2.0, 3}};
  for (auto [theta, d] : cases) {
    const PickandsFn a = PickandsFn::logistic(theta, d);
    const double target = std::pow(static_cast<double>(d), 1.0 / theta);
    std::ostringstream lbl;
    lbl << "theta=" << theta << ",d=" << d;
    c.check(lbl.str() + " exact", copulas::ev_lower_tail_order(a), target,
            1e-12);
    const CopulaModel m = CopulaModel::extreme_value(a);
    auto est = tm::estimate_tail_order_diagonal(
        [&m](double u) { return m.diagonal(u); }, Side::lower,
        tm::GridSpec::analytic(), d);
    c.check(lbl.str() + " regression", est.kappa, target, 1e-8);
  }
}

void criterion_acig_cross_construction(Ctx& c) {
  const std::pair<int, double> cases[] = {{2, 1.5}, {3, 2.5}};
  for (auto [d, alpha] : cases) {
    const RadialLaw law = RadialLaw::k_product(d, alpha);
    const Generator acig = Generator::acig(alpha);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double s =
          std::exp(std::log(1e-3) + (std::log(1e2) - std::log(1e-3)) * i / 19.0);
      worst = std::max(worst, std::fabs(generators::williamson_transform(
                                  law, d, s) -
                              acig.psi(s)));
    }
    std::ostringstream lbl;
    lbl << "d=" << d << ",alpha=" << alpha << " max|diff|";
    c.check_leq(lbl.str(), worst, 1e-6);
  }
}

void criterion_acig_orders(Ctx& c) {
  for (double alpha : {1.5, 2.5}) {
    const CopulaModel m = CopulaModel::archimedean(2, Generator::acig(alpha));
    auto up = tm::estimate_tail_order_diagonal(
        [&m](double u) { return m.survival_diagonal(u); }, Side::upper,
        tm::GridSpec::analytic(), 2);
    auto lo = tm::estimate_tail_order_diagonal(
        [&m](double u) { return m.diagonal(u); }, Side::lower,
        tm::GridSpec::analytic(), 2);
    std::ostringstream lbl;
    lbl << "alpha=" << alpha;
    c.check(lbl.str() + " upper", up.kappa, std::min(alpha, 2.0), 0.1);
    c.check(lbl.str() + " lower", lo.kappa, std::sqrt(2.0), 0.1);
  }
}

void criterion_weibull_scale_mixture(Ctx& c) {
  const std::size_t n = c.n_mc();
  const double tol = c.suite == Suite::full ? 0.2 : 0.3;
  const auto m = samp::sample_archimedean_scale_mixture(
      RadialLaw::positive_weibull(1.5), 2, {c.seed, 11}, n);
  auto est = tm::estimate_tail_order_diagonal(
      [&m](double u) { return samp::empirical_copula_diagonal(m, u, Side::upper); },
      Side::upper, tm::GridSpec::monte_carlo(), 2, tm::Method::monte_carlo);
  c.check("kappa_U", est.kappa, 1.5, tol);
}

void criterion_dagum_example(Ctx& c) {
  const std::size_t n = c.n_mc();
  const double tol_lambda = c.suite == Suite::full ? 0.05 : 0.1;
  const double tol_kappa = c.suite == Suite::full ? 0.2 : 0.3;
  const auto m = samp::sample_archimedean_scale_mixture(
      RadialLaw::dagum(0.6, 1.8, 1.0), 2, {c.seed, 12}, n);
  const double lambda = tm::estimate_lambda(
      [&m](double u) { return samp::empirical_copula_diagonal(m, u, Side::lower); },
      tm::GridSpec::monte_carlo());
  c.check("lambda_L", lambda, std::pow(2.0, -0.6), tol_lambda);
  auto est = tm::estimate_tail_order_diagonal(
      [&m](double u) { return samp::empirical_copula_diagonal(m, u, Side::upper); },
      Side::upper, tm::GridSpec::monte_carlo(), 2, tm::Method::monte_carlo);
  c.check("kappa_U", est.kappa, 1.08, tol_kappa);
}

void criterion_figure1(Ctx& c) {
  namespace fs = std::filesystem;
  // unique per process so concurrent verify runs cannot race on the fixture
  const fs::path dir =
      fs::temp_directory_path() /
      ("tailorder-fig1-" + std::to_string(c.seed) + "-" +
       std::to_string(static_cast<unsigned long>(::getpid())));
  fs::create_directories(dir);
  const figure1::Result r1 = figure1::emit(dir.string(), c.seed);
  c.check("uniform rows", static_cast<double>(r1.uniform.rows), 2000.0, 0.0);
  c.check("normal rows", static_cast<double>(r1.normal.rows), 2000.0, 0.0);
  bool in_range = true;
  for (double v : r1.uniform.data) in_range = in_range && v >= 0.0 && v <= 1.0;
  c.check_true("uniform entries in [0,1]", in_range);
  for (int j = 0; j < 2; ++j) {
    std::ostringstream lbl;
    lbl << "uniform margin KS col " << (j + 1);
    c.check_leq(lbl.str(),
                ks_statistic(column(r1.uniform, j), [](double x) { return x; }),
                0.0365);
  }
  // empirical lower diagonal at u = 0.01 against lambda_L * u
  const double diag = samp::empirical_copula_diagonal(r1.uniform, 0.01,
                                                      Side::lower);
  const double p = std::pow(2.0, -0.6) * 0.01;
  c.check("lower diagonal at 0.01", diag, p,
          3.0 * std::sqrt(p * (1.0 - p) / 2000.0));
  // determinism: a second emission must be byte-identical
  const fs::path dir2 = dir / "again";
  fs::create_directories(dir2);
  figure1::emit(dir2.string(), c.seed);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  c.check_true("deterministic bytes",
               slurp(dir / "dagum-simplex-unif.csv") ==
                       slurp(dir2 / "dagum-simplex-unif.csv") &&
                   slurp(dir / "dagum-simplex-norm.csv") ==
                       slurp(dir2 / "dagum-simplex-norm.csv"));
  fs::remove_all(dir);
}

void criterion_joe2000(Ctx& c) {
  const CopulaModel m = CopulaModel::archimedean(2, Generator::joe2000(0.5));
  auto up = tm::estimate_tail_order_diagonal(
      [&m](double u) { return m.survival_diagonal(u); }, Side::upper,
      tm::GridSpec::analytic(), 2);
  c.check("kappa_U", up.kappa, 1.5, 0.05);
  auto lo = tm::estimate_tail_order_diagonal(
      [&m](double u) { return m.diagonal(u); }, Side::lower,
      tm::GridSpec::analytic(), 2);
  c.check("kappa_L", lo.kappa, std::sqrt(2.0), 0.05);
}

void criterion_sampler_suite(Ctx& c) {
  const std::size_t n = 100000;
  const double crit = ks_crit(n);

  {  // simplex: margins and row sums
    const auto s2 = samp::sample_simplex({c.seed, 21}, 2, n);
    c.check_leq("simplex d=2 margin KS",
                ks_statistic(column(s2, 0), [](double x) { return x; }), crit);
    const auto s3 = samp::sample_simplex({c.seed, 22}, 3, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < s3.rows; ++i) {
      double sum = 0.0;
      for (int j = 0; j < 3; ++j) sum += s3.at(i, j);
      worst = std::max(worst, std::fabs(sum - 1.0));
    }
    c.check_leq("simplex row-sum defect", worst, 1e-12);
    c.check_leq("simplex d=3 Kumaraswamy margin KS",
                ks_statistic(column(s3, 1),
                             [](double x) {
                               return 1.0 - (1.0 - x) * (1.0 - x);
                             }),
                crit);
  }
  {  // sphere: norms and angle
    const auto sp = samp::sample_sphere({c.seed, 23}, 2, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < sp.rows; ++i) {
      const double norm =
          std::hypot(sp.at(i, 0), sp.at(i, 1));
      worst = std::max(worst, std::fabs(norm - 1.0));
    }
    c.check_leq("sphere row-norm defect", worst, 1e-12);
    std::vector<double> angles(sp.rows);
    for (std::size_t i = 0; i < sp.rows; ++i) {
      double a = std::atan2(sp.at(i, 1), sp.at(i, 0));
      if (a < 0.0) a += 2.0 * 3.14159265358979323846;
      angles[i] = a / (2.0 * 3.14159265358979323846);
    }
    c.check_leq("sphere angle KS",
                ks_statistic(angles, [](double x) { return x; }), crit);
  }
  {  // uniform margins of the Archimedean samplers
    const auto sm = samp::sample_archimedean_scale_mixture(
        RadialLaw::dagum(0.6, 1.8, 1.0), 2, {c.seed, 24}, n);
    c.check_leq("scale-mixture margin KS",
                ks_statistic(column(sm, 0), [](double x) { return x; }), crit);
    const auto fr = samp::sample_archimedean_frailty(
        RadialLaw::inverse_gamma(1.5), Generator::acig(1.5), 2, {c.seed, 25},
        n);
    c.check_leq("frailty margin KS",
                ks_statistic(column(fr, 1), [](double x) { return x; }), crit);
  }
  {  // elliptical margins: Gaussian radial, Student-t radial, Kotz norms
    const auto g = samp::sample_elliptical(0.0, RadialLaw::kotz(1.0, 0.5, 1.0),
                                           {c.seed, 26}, n);
    c.check_leq("elliptical normal margin KS",
                ks_statistic(column(g, 0),
                             [](double x) { return num::normal_cdf(x); }),
                crit);
    const auto t = samp::sample_elliptical(0.3, RadialLaw::gig_t(4.0),
                                           {c.seed, 27}, n);
    c.check_leq("elliptical t(4) margin KS",
                ks_statistic(column(t, 0),
                             [](double x) { return num::student_t_cdf(x, 4.0); }),
                crit);
    const RadialLaw kr = RadialLaw::kotz(2.0, 1.0, 0.7);
    const auto k = samp::sample_elliptical(0.0, kr, {c.seed, 28}, n);
    std::vector<double> norms(k.rows);
    for (std::size_t i = 0; i < k.rows; ++i)
      norms[i] = std::hypot(k.at(i, 0), k.at(i, 1));
    c.check_leq("elliptical Kotz radial KS",
                ks_statistic(norms, [&kr](double x) { return kr.cdf(x); }),
                crit);
  }
  {  // frailty vs scale mixture, ACIG alpha = 1.5, d = 2
    const auto a = samp::sample_archimedean_frailty(
        RadialLaw::inverse_gamma(1.5), Generator::acig(1.5), 2, {c.seed, 29},
        n);
    const auto b = samp::sample_archimedean_scale_mixture(
        RadialLaw::k_product(2, 1.5), 2, {c.seed, 30}, n);
    double worst_z = 0.0;
    for (double u : {0.25, 0.5, 0.75}) {
      for (double v : {0.25, 0.5, 0.75}) {
        double ca = 0.0, cb = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          ca += (a.at(i, 0) <= u && a.at(i, 1) <= v) ? 1.0 : 0.0;
          cb += (b.at(i, 0) <= u && b.at(i, 1) <= v) ? 1.0 : 0.0;
        }
        ca /= n;
        cb /= n;
        const double se =
            std::sqrt(ca * (1.0 - ca) / n + cb * (1.0 - cb) / n);
        worst_z = std::max(worst_z, std::fabs(ca - cb) / se);
      }
    }
    c.check_leq("frailty vs scale-mixture max |z|", worst_z, 4.0);
  }
}

void criterion_generator_invariants(Ctx& c) {
  const std::vector<std::pair<std::string, Generator>> gens = {
      {"acig(1.5)", Generator::acig(1.5)},
      {"acig(2.5)", Generator::acig(2.5)},
      {"joe2000(0.5)", Generator::joe2000(0.5)},
      {"gumbel(2)", Generator::gumbel(2.0)},
      {"williamson:dagum", Generator::williamson(
                               RadialLaw::dagum(0.6, 1.8, 1.0), 2)},
      {"williamson:pweibull", Generator::williamson(
                                  RadialLaw::positive_weibull(1.5), 2)},
  };
  const double ugrid[] = {1e-6, 1e-4, 1e-2, 0.1, 0.3,
                          0.5,  0.7,  0.9,  0.99, 1.0 - 1e-6};
  for (const auto& [name, g] : gens) {
    double worst = 0.0;
    for (double u : ugrid)
      worst = std::max(worst, std::fabs(g.psi(g.psi_inverse(u)) - u));
    c.check_leq(name + " round-trip", worst, 1e-9);
  }
  // 1 - psi in RV_1(0+): log-log slope of s -> 1 - psi(s) over [1e-6, 1e-3]
  for (const auto& name : {std::string("williamson:dagum"),
                           std::string("williamson:pweibull")}) {
    const Generator& g = name == "williamson:dagum" ? gens[4].second
                                                    : gens[5].second;
    std::vector<double> ss, ys;
    for (int i = 0; i < 20; ++i) {
      const double s =
          std::exp(std::log(1e-6) + (std::log(1e-3) - std::log(1e-6)) * i / 19.0);
      ss.push_back(s);
      ys.push_back(1.0 - g.psi(s));
    }
    const auto fit = num::fit_loglog_slope(ss, ys);
    c.check(name + " 1-psi slope", fit.slope, 1.0, 0.02);
  }
}

void criterion_ordering(Ctx& c) {
  const double u = 1e-4;
  const double como = CopulaModel::comonotone(2).diagonal(u);
  const double gum =
      CopulaModel::archimedean(2, Generator::gumbel(2.0)).diagonal(u);
  const double ind = CopulaModel::independence(2).diagonal(u);
  c.check_true("comonotone > gumbel(2)", como > gum);
  c.check_true("gumbel(2) > independence", gum > ind);
}

}  // namespace

std::vector<CriterionResult> run_all(Suite suite, std::uint64_t seed) {
  struct Spec {
    int id;
    const char* name;
    double budget;
    void (*fn)(Ctx&);
  };
  const Spec specs[] = {
      {1, "gaussian-tail-order", 10.0, criterion_gaussian_order},
      {2, "kotz-mda-ratio", 1.0, criterion_kotz_mda},
      {3, "ev-lower-order", 1.0, criterion_ev_order},
      {4, "acig-cross-construction", 30.0, criterion_acig_cross_construction},
      {5, "acig-orders", 30.0, criterion_acig_orders},
      {6, "weibull-scale-mixture-upper-order", 120.0,
       criterion_weibull_scale_mixture},
      {7, "dagum-example", 180.0, criterion_dagum_example},
      {8, "figure1-reproduction", 0.0, criterion_figure1},
      {9, "joe2000-orders", 10.0, criterion_joe2000},
      {10, "sampler-invariants", 120.0, criterion_sampler_suite},
      {11, "generator-invariants", 30.0, criterion_generator_invariants},
      {12, "diagonal-ordering", 1.0, criterion_ordering},
  };
  std::vector<CriterionResult> results;
  Ctx ctx{suite, seed};
  for (const Spec& s : specs) {
    CriterionResult r;
    r.id = s.id;
    r.name = s.name;
    r.budget_seconds = s.budget;
    ctx.cur = &r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      s.fn(ctx);
    } catch (const std::exception& e) {
      CheckResult c{std::string("exception: ") + e.what(), 0.0, 1.0, 0.0,
                    false};
      r.checks.push_back(c);
    }
    r.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    r.pass = true;
    for (const auto& ch : r.checks) r.pass = r.pass && ch.pass;
    if (s.budget > 0.0 && r.seconds >= s.budget) {
      r.checks.push_back({"runtime (s)", r.seconds, s.budget, 0.0, false});
      r.pass = false;
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace tailorder::verify
