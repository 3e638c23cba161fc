#include "tailorder/tailmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tailorder/numerics.hpp"

namespace tailorder::tailmetrics {

namespace num = tailorder::numerics;
using copulas::CopulaModel;
using copulas::PickandsFn;
using generators::Generator;
using radial::RadialLaw;
using radial::UpperTailClass;

std::vector<double> GridSpec::values() const {
  if (!(u_min > 0.0) || !(u_max < 1.0) || !(u_min < u_max) || points < 2)
    throw std::domain_error("GridSpec: requires 0 < u_min < u_max < 1, >= 2 points");
  std::vector<double> us(points);
  const double llo = std::log(u_min), lhi = std::log(u_max);
  for (int i = 0; i < points; ++i)
    us[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
  return us;
}

std::pair<double, double> derived_measures(double kappa) {
  if (!(kappa >= 1.0))
    throw std::domain_error("derived_measures: requires kappa >= 1");
  return {1.0 / kappa, 2.0 / kappa - 1.0};
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

namespace {

void fill_archimedean(const Generator& gen, int d, CatalogEntry& e) {
  const double dd = static_cast<double>(d);
  switch (gen.kind()) {
    case Generator::Kind::acig: {
      const double a = gen.shape();
      e.kappa_upper = std::max(1.0, std::min(a, dd));
      e.kappa_lower = std::sqrt(dd);
      e.lambda_lower = 0.0;  // kappa_L > 1
      e.moment_index = a;
      e.note = "inverse-gamma Laplace transform";
      break;
    }
    case Generator::Kind::joe2000: {
      const double a = gen.shape();
      e.kappa_upper = 1.0 + a;
      e.kappa_lower = std::pow(dd, a);
      e.lambda_upper = std::nullopt;
      e.lambda_lower = 0.0;
      e.moment_index = 1.0 + a;
      break;
    }
    case Generator::Kind::gumbel: {
      const double th = gen.shape();
      e.kappa_lower = std::pow(dd, 1.0 / th);
      if (th == 1.0) {
        e.kappa_upper = dd;
        e.lambda_upper = 0.0;
        e.lambda_lower = 0.0;
      } else {
        e.kappa_upper = 1.0;
        e.lambda_upper = ev_upper_lambda(PickandsFn::logistic(th, d));
        e.lambda_lower = 0.0;
      }
      break;
    }
    case Generator::Kind::williamson: {
      const RadialLaw& law = *gen.williamson_law();
      if (auto idx = law.lower_tail_index())
        e.kappa_upper = std::clamp(*idx, 1.0, dd);
      const UpperTailClass up = law.upper_tail_class();
      if (up.kind == UpperTailClass::Kind::gumbel_mda) {
        if (auto beta = law.gumbel_aux_rv_index()) {
          if (*beta >= 0.0 && *beta < 1.0) {
            e.kappa_lower = std::pow(dd, 1.0 - *beta);
            if (*e.kappa_lower > 1.0) e.lambda_lower = 0.0;
          }
        }
      } else if (up.kind == UpperTailClass::Kind::regularly_varying) {
        // heavy-tailed radial: usual lower tail dependence with
        // lambda_L = d^{rv index}
        e.kappa_lower = 1.0;
        e.lambda_lower = std::pow(dd, up.rv_index);
      }
      if (law.family() == radial::Family::k_product &&
          law.int_param() == d)
        e.moment_index = law.param(0);
      break;
    }
  }
}

}  // namespace

CatalogEntry tail_order_catalog(const CopulaModel& model) {
  CatalogEntry e;
  e.model = model.describe();
  const double d = static_cast<double>(model.dim());
  switch (model.kind()) {
    case CopulaModel::Kind::independence:
      e.kappa_lower = d;
      e.kappa_upper = d;
      e.lambda_lower = 0.0;
      e.lambda_upper = 0.0;
      break;
    case CopulaModel::Kind::comonotone:
      e.kappa_lower = 1.0;
      e.kappa_upper = 1.0;
      e.lambda_lower = 1.0;
      e.lambda_upper = 1.0;
      break;
    case CopulaModel::Kind::gaussian: {
      const double k = 2.0 / (1.0 + model.rho());
      e.kappa_lower = k;
      e.kappa_upper = k;
      e.lambda_lower = 0.0;
      e.lambda_upper = 0.0;
      break;
    }
    case CopulaModel::Kind::student:
      e.kappa_lower = 1.0;
      e.kappa_upper = 1.0;
      e.note = "regularly varying radial tail";
      break;
    case CopulaModel::Kind::kotz: {
      const double k = std::pow(2.0 / (1.0 + model.rho()), model.kotz_xi());
      e.kappa_lower = k;
      e.kappa_upper = k;
      e.lambda_lower = 0.0;
      e.lambda_upper = 0.0;
      break;
    }
    case CopulaModel::Kind::extreme_value: {
      const PickandsFn& a = model.pickands();
      e.kappa_lower = ev_lower_tail_order(a);
      const double lam = ev_upper_lambda(a);
      e.lambda_upper = lam;
      if (lam > 1e-12) {
        e.kappa_upper = 1.0;
      } else if (a.kind() == PickandsFn::Kind::indep_sum ||
                 (a.kind() == PickandsFn::Kind::logistic && a.theta() == 1.0)) {
        e.kappa_upper = d;
      }
      e.lambda_lower = (*e.kappa_lower > 1.0) ? 0.0 : 1.0;
      break;
    }
    case CopulaModel::Kind::archimedean:
      fill_archimedean(model.generator(), model.dim(), e);
      break;
  }
  return e;
}

// ---------------------------------------------------------------------------
// Estimators
// ---------------------------------------------------------------------------

TailOrderEstimate estimate_tail_order_diagonal(
    const std::function<double(double)>& diag, Side side, GridSpec grid,
    std::optional<int> dim, Method method) {
  const std::vector<double> us = grid.values();
  std::vector<double> xs, ys;
  xs.reserve(us.size());
  ys.reserve(us.size());
  int dropped = 0;
  for (double u : us) {
    const double y = diag(u);
    if (std::isfinite(y) && y > 0.0) {
      xs.push_back(u);
      ys.push_back(y);
    } else {
      ++dropped;  // zero counts in an MC diagonal truncate the grid
    }
  }
  if (xs.size() < 5)
    throw estimation_error(
        "estimate_tail_order_diagonal: fewer than 5 usable grid points");
  const num::SlopeFit fit = num::fit_loglog_slope(xs, ys);
  TailOrderEstimate est;
  est.raw_slope = fit.slope;
  const double hi = dim ? static_cast<double>(*dim)
                        : std::numeric_limits<double>::infinity();
  est.kappa = std::clamp(fit.slope, 1.0, hi);
  est.stderr_ = fit.slope_se;
  std::tie(est.eta, est.chi_bar) = derived_measures(est.kappa);
  est.side = side;
  est.method = method;
  est.grid = grid;
  est.dropped_points = dropped;
  return est;
}

double estimate_lambda(const std::function<double(double)>& diag,
                       GridSpec grid) {
  const std::vector<double> us = grid.values();
  double sum = 0.0;
  int used = 0;
  for (double u : us) {
    const double y = diag(u);
    if (std::isfinite(y) && y > 0.0) {
      sum += y / u;
      if (++used == 3) break;
    }
  }
  if (used == 0)
    throw estimation_error("estimate_lambda: diagonal vanished on the grid");
  return sum / used;
}

double mda_gumbel_tail_order(const RadialLaw& law, double rho, int d,
                             double r) {
  if (law.upper_tail_class().kind != UpperTailClass::Kind::gumbel_mda)
    throw std::domain_error(
        "mda_gumbel_tail_order: radial law is not in the Gumbel MDA");
  if (d < 2) throw std::domain_error("mda_gumbel_tail_order: requires d >= 2");
  if (!(rho > -1.0) || !(rho <= 1.0))
    throw std::domain_error("mda_gumbel_tail_order: requires rho in (-1,1]");
  if (rho == 1.0) return 1.0;  // comonotone scale factor b = 1
  const double b = std::sqrt(d / (1.0 + (d - 1) * rho));
  const double ls_r = law.log_survival(r);
  const double ls_br = law.log_survival(b * r);
  if (!std::isfinite(ls_r) || !std::isfinite(ls_br))
    throw accuracy_error(
        "mda_gumbel_tail_order: survival underflow, use a smaller r", 0.0);
  if (ls_r > std::log(1e-4))
    throw std::domain_error(
        "mda_gumbel_tail_order: r too small, survival must be below 1e-4");
  return ls_br / ls_r;
}

}  // namespace tailorder::tailmetrics
