#include "tailorder/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "tailorder/numerics.hpp"

namespace tailorder::copulas {

namespace num = tailorder::numerics;

// ---------------------------------------------------------------------------
// PickandsFn
// ---------------------------------------------------------------------------

PickandsFn PickandsFn::logistic(double theta, int d) {
  if (!(theta >= 1.0))
    throw std::domain_error("PickandsFn::logistic: requires theta >= 1");
  if (d < 2) throw std::domain_error("PickandsFn::logistic: requires d >= 2");
  return PickandsFn(Kind::logistic, theta, d);
}
PickandsFn PickandsFn::independence(int d) {
  if (d < 2) throw std::domain_error("PickandsFn::independence: requires d >= 2");
  return PickandsFn(Kind::indep_sum, 1.0, d);
}
PickandsFn PickandsFn::comonotone(int d) {
  if (d < 2) throw std::domain_error("PickandsFn::comonotone: requires d >= 2");
  return PickandsFn(Kind::comonotone_max, 1.0, d);
}

double PickandsFn::value(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    throw std::domain_error("PickandsFn::value: dimension mismatch");
  switch (kind_) {
    case Kind::logistic: {
      double s = 0.0;
      for (double v : x) {
        if (v < 0.0) throw std::domain_error("PickandsFn: requires x >= 0");
        s += std::pow(v, theta_);
      }
      return std::pow(s, 1.0 / theta_);
    }
    case Kind::indep_sum: {
      double s = 0.0;
      for (double v : x) s += v;
      return s;
    }
    case Kind::comonotone_max:
      return *std::max_element(x.begin(), x.end());
  }
  throw std::logic_error("PickandsFn::value: unreachable");
}

double PickandsFn::at_ones(int k) const {
  if (k < 1 || k > dim_)
    throw std::domain_error("PickandsFn::at_ones: k out of range");
  switch (kind_) {
    case Kind::logistic:
      return std::pow(static_cast<double>(k), 1.0 / theta_);
    case Kind::indep_sum:
      return static_cast<double>(k);
    case Kind::comonotone_max:
      return 1.0;
  }
  throw std::logic_error("PickandsFn::at_ones: unreachable");
}

double ev_lower_tail_order(const PickandsFn& a) { return a.at_ones(); }

double ev_upper_lambda(const PickandsFn& a) {
  const int d = a.dim();
  if (d > 20)
    throw budget_error("ev_upper_lambda: inclusion-exclusion limited to d <= 20");
  double lambda = static_cast<double>(d);
  double binom = static_cast<double>(d);  // C(d,1)
  for (int k = 2; k <= d; ++k) {
    binom *= static_cast<double>(d - k + 1) / k;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    lambda -= sign * binom * a.at_ones(k);
  }
  return lambda;
}

// ---------------------------------------------------------------------------
// CopulaModel construction
// ---------------------------------------------------------------------------

CopulaModel CopulaModel::archimedean(int d, generators::Generator gen) {
  if (d < 2) throw std::domain_error("archimedean: requires d >= 2");
  if (gen.kind() == generators::Generator::Kind::williamson &&
      gen.williamson_dim() != d)
    throw std::domain_error(
        "archimedean: Williamson generator dimension must match the copula");
  if (!gen.d_monotone_spot_check(d))
    throw std::domain_error(
        "archimedean: generator failed the d-monotonicity spot check");
  CopulaModel m(Kind::archimedean);
  m.dim_ = d;
  m.gen_ = std::make_shared<const generators::Generator>(std::move(gen));
  return m;
}

CopulaModel CopulaModel::gaussian(double rho) {
  if (!(rho > -1.0) || !(rho < 1.0))
    throw std::domain_error("gaussian: requires rho in (-1,1)");
  CopulaModel m(Kind::gaussian);
  m.dim_ = 2;
  m.rho_ = rho;
  return m;
}

CopulaModel CopulaModel::student(double rho, double nu) {
  if (!(rho > -1.0) || !(rho < 1.0))
    throw std::domain_error("student: requires rho in (-1,1)");
  if (!(nu > 0.0)) throw std::domain_error("student: requires nu > 0");
  CopulaModel m(Kind::student);
  m.dim_ = 2;
  m.rho_ = rho;
  m.nu_ = nu;
  return m;
}

CopulaModel CopulaModel::kotz(double rho, double n, double beta, double xi) {
  if (!(rho > -1.0) || !(rho < 1.0))
    throw std::domain_error("kotz: requires rho in (-1,1)");
  if (!(n > 0.0) || !(beta > 0.0) || !(xi > 0.0))
    throw std::domain_error("kotz: requires N, beta, xi > 0");
  CopulaModel m(Kind::kotz);
  m.dim_ = 2;
  m.rho_ = rho;
  m.kotz_n_ = n;
  m.kotz_beta_ = beta;
  m.kotz_xi_ = xi;
  return m;
}

CopulaModel CopulaModel::extreme_value(PickandsFn a) {
  CopulaModel m(Kind::extreme_value);
  m.dim_ = a.dim();
  m.pickands_ = std::make_shared<const PickandsFn>(std::move(a));
  return m;
}

CopulaModel CopulaModel::independence(int d) {
  if (d < 2) throw std::domain_error("independence: requires d >= 2");
  CopulaModel m(Kind::independence);
  m.dim_ = d;
  return m;
}

CopulaModel CopulaModel::comonotone(int d) {
  if (d < 2) throw std::domain_error("comonotone: requires d >= 2");
  CopulaModel m(Kind::comonotone);
  m.dim_ = d;
  return m;
}

// ---------------------------------------------------------------------------
// cdf / diagonals
// ---------------------------------------------------------------------------

namespace {

// P[Z1 <= a, Z2 <= b] for standard bivariate normal, by conditioning on Z1.
double binormal_cdf(double a, double b, double rho) {
  const double s = std::sqrt(1.0 - rho * rho);
  auto f = [a, b, rho, s](double t) {
    const double z = a - t;
    const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    return phi * num::normal_cdf((b - rho * z) / s);
  };
  return num::integrate(f, 0.0, num::kInf);
}

double student_pdf(double z, double nu) {
  const double lc = num::log_gamma(0.5 * (nu + 1.0)) - num::log_gamma(0.5 * nu) -
                    0.5 * std::log(nu * std::numbers::pi);
  return std::exp(lc - 0.5 * (nu + 1.0) * std::log1p(z * z / nu));
}

// P[T1 <= a, T2 <= b] for the bivariate t: conditionally on T1 = z,
// (T2 - rho z) / sqrt((1-rho^2)(nu + z^2)/(nu+1)) is t with nu+1 dof.
double bistudent_cdf(double a, double b, double rho, double nu) {
  const double s2 = 1.0 - rho * rho;
  auto f = [=](double t) {
    const double z = a - t;
    const double scale = std::sqrt(s2 * (nu + z * z) / (nu + 1.0));
    return student_pdf(z, nu) *
           num::student_t_cdf((b - rho * z) / scale, nu + 1.0);
  };
  return num::integrate(f, 0.0, num::kInf);
}

double binomial_coeff(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c *= static_cast<double>(n - k + i) / i;
  return c;
}

}  // namespace

double CopulaModel::cdf(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != dim_)
    throw std::domain_error("CopulaModel::cdf: dimension mismatch");
  for (double v : u)
    if (!(v >= 0.0) || !(v <= 1.0))
      throw std::domain_error("CopulaModel::cdf: requires u in [0,1]^d");
  for (double v : u)
    if (v == 0.0) return 0.0;

  // drop coordinates equal to 1: every family here is exchangeable and
  // closed under margin restriction
  std::vector<double> w;
  w.reserve(u.size());
  for (double v : u)
    if (v < 1.0) w.push_back(v);
  if (w.empty()) return 1.0;
  if (w.size() == 1) return w[0];

  switch (kind_) {
    case Kind::independence: {
      double p = 1.0;
      for (double v : w) p *= v;
      return p;
    }
    case Kind::comonotone:
      return *std::min_element(w.begin(), w.end());
    case Kind::archimedean: {
      double s = 0.0;
      for (double v : w) s += gen_->psi_inverse(v);
      return gen_->psi(s);
    }
    case Kind::extreme_value: {
      // restriction of the logistic/boundary A to the kept coordinates
      std::vector<double> x(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) x[i] = -std::log(w[i]);
      PickandsFn sub = pickands_->kind() == PickandsFn::Kind::logistic
                           ? PickandsFn::logistic(pickands_->theta(),
                                                  static_cast<int>(x.size()))
                           : (pickands_->kind() == PickandsFn::Kind::indep_sum
                                  ? PickandsFn::independence(
                                        static_cast<int>(x.size()))
                                  : PickandsFn::comonotone(
                                        static_cast<int>(x.size())));
      return std::exp(-sub.value(x));
    }
    case Kind::gaussian:
      return binormal_cdf(num::normal_quantile(w[0]), num::normal_quantile(w[1]),
                          rho_);
    case Kind::student:
      return bistudent_cdf(num::student_t_quantile(w[0], nu_),
                           num::student_t_quantile(w[1], nu_), rho_, nu_);
    case Kind::kotz:
      throw unsupported_error(
          "CopulaModel::cdf: Kotz copula has no analytic cdf; estimate it by "
          "Monte Carlo sampling");
  }
  throw std::logic_error("CopulaModel::cdf: unreachable");
}

double CopulaModel::diagonal(double u) const {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("CopulaModel::diagonal: requires u in (0,1)");
  switch (kind_) {
    case Kind::comonotone:
      return u;
    case Kind::independence:
      return std::pow(u, dim_);
    case Kind::extreme_value:
      return std::pow(u, pickands_->at_ones());
    case Kind::archimedean:
      if (gen_->kind() == generators::Generator::Kind::gumbel)
        return std::pow(u, std::pow(static_cast<double>(dim_),
                                    1.0 / gen_->shape()));
      return gen_->psi(dim_ * gen_->psi_inverse(u));
    default: {
      std::vector<double> w(dim_, u);
      return cdf(w);
    }
  }
}

double CopulaModel::survival_diagonal(double u) const {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("CopulaModel::survival_diagonal: requires u in (0,1)");
  if (dim_ > 20)
    throw budget_error(
        "survival_diagonal: inclusion-exclusion limited to d <= 20");
  switch (kind_) {
    case Kind::comonotone:
      return u;
    case Kind::independence:
      return std::pow(u, dim_);
    case Kind::gaussian:
    case Kind::student:
      // elliptical copulas are reflection symmetric: C-hat = C
      return diagonal(u);
    case Kind::kotz:
      throw unsupported_error(
          "survival_diagonal: Kotz copula has no analytic cdf");
    case Kind::archimedean: {
      const double s = gen_->psi_inverse(1.0 - u);
      double acc = 1.0;
      for (int k = 1; k <= dim_; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double margin = (k == 1) ? (1.0 - u) : gen_->psi(k * s);
        acc += sign * binomial_coeff(dim_, k) * margin;
      }
      return std::max(acc, 0.0);
    }
    case Kind::extreme_value: {
      double acc = 1.0;
      for (int k = 1; k <= dim_; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binomial_coeff(dim_, k) *
               std::pow(1.0 - u, pickands_->at_ones(k));
      }
      return std::max(acc, 0.0);
    }
  }
  throw std::logic_error("CopulaModel::survival_diagonal: unreachable");
}

std::string CopulaModel::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::archimedean:
      os << "archimedean:" << gen_->describe() << ":d=" << dim_;
      break;
    case Kind::gaussian:
      os << "gaussian:rho=" << rho_;
      break;
    case Kind::student:
      os << "student(" << nu_ << "):rho=" << rho_;
      break;
    case Kind::kotz:
      os << "elliptical:kotz(" << kotz_n_ << "," << kotz_beta_ << ","
         << kotz_xi_ << "):rho=" << rho_;
      break;
    case Kind::extreme_value:
      switch (pickands_->kind()) {
        case PickandsFn::Kind::logistic:
          os << "ev:logistic(" << pickands_->theta() << "):d=" << dim_;
          break;
        case PickandsFn::Kind::indep_sum:
          os << "ev:independence:d=" << dim_;
          break;
        case PickandsFn::Kind::comonotone_max:
          os << "ev:comonotone:d=" << dim_;
          break;
      }
      break;
    case Kind::independence:
      os << "independence:d=" << dim_;
      break;
    case Kind::comonotone:
      os << "comonotone:d=" << dim_;
      break;
  }
  return os.str();
}

}  // namespace tailorder::copulas
