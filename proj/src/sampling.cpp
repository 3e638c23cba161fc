#include "tailorder/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tailorder/exec.hpp"
#include "tailorder/numerics.hpp"

namespace tailorder::sampling {

namespace num = tailorder::numerics;
using copulas::CopulaModel;
using generators::Generator;
using radial::Family;
using radial::RadialLaw;

// ---------------------------------------------------------------------------
// Simplex / sphere primitives
// ---------------------------------------------------------------------------

SampleMatrix sample_simplex(RngStream stream, int d, std::size_t n, Exec exec) {
  if (d < 2) throw std::domain_error("sample_simplex: requires d >= 2");
  SampleMatrix m(n, d, MarginTag::raw);
  for_each_index(n, exec, [&](std::size_t i) {
    Rng rng(stream, i);
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
      const double e = rng.exponential();
      m.at(i, j) = e;
      sum += e;
    }
    for (int j = 0; j < d; ++j) m.at(i, j) /= sum;
  });
  return m;
}

SampleMatrix sample_sphere(RngStream stream, int d, std::size_t n, Exec exec) {
  if (d < 2) throw std::domain_error("sample_sphere: requires d >= 2");
  SampleMatrix m(n, d, MarginTag::raw);
  for_each_index(n, exec, [&](std::size_t i) {
    Rng rng(stream, i);
    double norm2;
    do {
      norm2 = 0.0;
      for (int j = 0; j < d; ++j) {
        const double z = rng.normal();
        m.at(i, j) = z;
        norm2 += z * z;
      }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (int j = 0; j < d; ++j) m.at(i, j) *= inv;
  });
  return m;
}

// ---------------------------------------------------------------------------
// Tabulated Williamson psi for the scale-mixture sampler
// ---------------------------------------------------------------------------

namespace {

// Monotone piecewise-cubic (Fritsch-Carlson) interpolant of ln psi against
// ln s over [quantile(1e-7), quantile(1-1e-7)] of the radial law.
class PsiTable {
 public:
  PsiTable(const RadialLaw& law, int d, Exec exec)
      : law_(law), d_(d) {
    static constexpr int kPoints = 4096;
    s_lo_ = law.quantile(1e-7);
    s_hi_ = law.quantile(1.0 - 1e-7);
    lx_.resize(kPoints);
    ly_.resize(kPoints);
    const double llo = std::log(s_lo_), lhi = std::log(s_hi_);
    for (int i = 0; i < kPoints; ++i)
      lx_[i] = llo + (lhi - llo) * i / (kPoints - 1);
    std::vector<double> psi(kPoints);
    for_each_index(kPoints, exec, [&](std::size_t i) {
      psi[i] = generators::williamson_transform(law_, d_, std::exp(lx_[i]));
    });
    // clamp away quadrature jitter so the data are strictly nonincreasing
    for (int i = 1; i < kPoints; ++i)
      psi[i] = std::min(psi[i], psi[i - 1]);
    for (int i = 0; i < kPoints; ++i)
      ly_[i] = std::log(std::max(psi[i], 1e-300));
    build_slopes();
  }

  double operator()(double s) const {
    if (!(s > s_lo_) || !(s < s_hi_))
      return generators::williamson_transform(law_, d_, s);
    const double x = std::log(s);
    const auto it = std::upper_bound(lx_.begin(), lx_.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - lx_.begin()) - 1;
    const double h = lx_[k + 1] - lx_[k];
    const double t = (x - lx_[k]) / h;
    const double y = hermite(ly_[k], ly_[k + 1], m_[k] * h, m_[k + 1] * h, t);
    return std::exp(y);
  }

 private:
  static double hermite(double y0, double y1, double d0, double d1, double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
  }

  void build_slopes() {
    const std::size_t n = lx_.size();
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      delta[i] = (ly_[i + 1] - ly_[i]) / (lx_[i + 1] - lx_[i]);
    m_.assign(n, 0.0);
    m_[0] = delta[0];
    m_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        m_[i] = 0.0;
      } else {
        // harmonic mean keeps the interpolant monotone
        m_[i] = 2.0 * delta[i - 1] * delta[i] / (delta[i - 1] + delta[i]);
      }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (delta[i] == 0.0) {
        m_[i] = m_[i + 1] = 0.0;
        continue;
      }
      const double a = m_[i] / delta[i], b = m_[i + 1] / delta[i];
      const double r = a * a + b * b;
      if (r > 9.0) {
        const double tau = 3.0 / std::sqrt(r);
        m_[i] = tau * a * delta[i];
        m_[i + 1] = tau * b * delta[i];
      }
    }
  }

  const RadialLaw& law_;
  int d_;
  double s_lo_, s_hi_;
  std::vector<double> lx_, ly_, m_;
};

}  // namespace

SampleMatrix sample_archimedean_scale_mixture(const RadialLaw& law, int d,
                                              RngStream stream, std::size_t n,
                                              Exec exec) {
  if (d < 2)
    throw std::domain_error("sample_archimedean_scale_mixture: requires d >= 2");
  if (!law.supports_cdf())
    throw unsupported_error(
        "sample_archimedean_scale_mixture: law has no distribution function");
  if (law.cdf(0.0) > 0.0)
    throw std::domain_error(
        "sample_archimedean_scale_mixture: law has an atom at 0");
  SampleMatrix m(n, d, MarginTag::uniform);
  if (law.family() == Family::point_mass) {
    // psi has the closed form (1 - s/r0)^{d-1}; no table needed
    const double r0 = law.param(0);
    for_each_index(n, exec, [&](std::size_t i) {
      Rng rng(stream, i);
      double sum = 0.0;
      std::vector<double> e(d);
      for (int j = 0; j < d; ++j) {
        e[j] = rng.exponential();
        sum += e[j];
      }
      for (int j = 0; j < d; ++j) {
        const double x = r0 * e[j] / sum;  // R * S_j with R = r0
        m.at(i, j) = std::pow(1.0 - x / r0, d - 1);
      }
    });
    return m;
  }
  const PsiTable psi(law, d, exec);
  for_each_index(n, exec, [&](std::size_t i) {
    Rng rng(stream, i);
    const double r = law.sample_one(rng);
    double sum = 0.0;
    std::vector<double> e(d);
    for (int j = 0; j < d; ++j) {
      e[j] = rng.exponential();
      sum += e[j];
    }
    for (int j = 0; j < d; ++j) {
      const double u = psi(r * e[j] / sum);
      m.at(i, j) = std::clamp(u, 0.0, 1.0);
    }
  });
  return m;
}

SampleMatrix sample_archimedean_frailty(const RadialLaw& frailty,
                                        const Generator& psi, int d,
                                        RngStream stream, std::size_t n,
                                        Exec exec) {
  if (d < 2)
    throw std::domain_error("sample_archimedean_frailty: requires d >= 2");
  SampleMatrix m(n, d, MarginTag::uniform);
  for_each_index(n, exec, [&](std::size_t i) {
    Rng rng(stream, i);
    const double xi = frailty.sample_one(rng);
    for (int j = 0; j < d; ++j) {
      const double u = psi.psi(rng.exponential() / xi);
      m.at(i, j) = std::clamp(u, 0.0, 1.0);
    }
  });
  return m;
}

SampleMatrix sample_elliptical(double rho, const RadialLaw& law,
                               RngStream stream, std::size_t n, Exec exec) {
  if (!(rho > -1.0) || !(rho < 1.0))
    throw std::domain_error("sample_elliptical: requires rho in (-1,1)");
  const double s = std::sqrt(1.0 - rho * rho);
  SampleMatrix m(n, 2, MarginTag::raw);
  for_each_index(n, exec, [&](std::size_t i) {
    Rng rng(stream, i);
    double z1, z2, norm2;
    do {
      z1 = rng.normal();
      z2 = rng.normal();
      norm2 = z1 * z1 + z2 * z2;
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    const double u1 = z1 * inv, u2 = z2 * inv;
    const double r = law.sample_one(rng);
    m.at(i, 0) = r * u1;
    m.at(i, 1) = r * (rho * u1 + s * u2);
  });
  return m;
}

// ---------------------------------------------------------------------------
// Pseudo-observations and the empirical copula diagonal
// ---------------------------------------------------------------------------

SampleMatrix rank_transform(const SampleMatrix& m) {
  SampleMatrix out(m.rows, m.cols, MarginTag::uniform);
  std::vector<std::size_t> order(m.rows);
  for (int j = 0; j < m.cols; ++j) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double va = m.at(a, j), vb = m.at(b, j);
      return va < vb || (va == vb && a < b);
    });
    for (std::size_t r = 0; r < m.rows; ++r)
      out.at(order[r], j) = static_cast<double>(r + 1) / (m.rows + 1);
  }
  return out;
}

double empirical_copula_diagonal(const SampleMatrix& m, double u, Side side,
                                 Exec exec) {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("empirical_copula_diagonal: requires u in (0,1)");
  if (m.rows == 0)
    throw std::domain_error("empirical_copula_diagonal: empty sample");
  if (m.tag != MarginTag::uniform)
    return empirical_copula_diagonal(rank_transform(m), u, side, exec);
  const double thresh = 1.0 - u;
  long long count = 0;
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) reduction(+ : count)
    for (long long i = 0; i < static_cast<long long>(m.rows); ++i) {
      bool all = true;
      for (int j = 0; j < m.cols; ++j) {
        const double v = m.at(static_cast<std::size_t>(i), j);
        if (side == Side::lower ? !(v <= u) : !(v > thresh)) {
          all = false;
          break;
        }
      }
      count += all ? 1 : 0;
    }
    return static_cast<double>(count) / static_cast<double>(m.rows);
  }
#endif
  (void)exec;
  for (std::size_t i = 0; i < m.rows; ++i) {
    bool all = true;
    for (int j = 0; j < m.cols; ++j) {
      const double v = m.at(i, j);
      if (side == Side::lower ? !(v <= u) : !(v > thresh)) {
        all = false;
        break;
      }
    }
    count += all ? 1 : 0;
  }
  return static_cast<double>(count) / static_cast<double>(m.rows);
}

void apply_normal_scores(SampleMatrix& m, Exec exec) {
  if (m.tag != MarginTag::uniform)
    throw std::domain_error("apply_normal_scores: requires uniform margins");
  for_each_index(m.rows, exec, [&](std::size_t i) {
    for (int j = 0; j < m.cols; ++j)
      m.at(i, j) = num::normal_quantile(m.at(i, j));
  });
  m.tag = MarginTag::normal_scores;
}

// ---------------------------------------------------------------------------
// Model-level sampling routes
// ---------------------------------------------------------------------------

namespace {

SampleMatrix sample_uniform_iid(RngStream stream, int d, std::size_t n,
                                Exec exec) {
  SampleMatrix m(n, d, MarginTag::uniform);
  for_each_index(n, exec, [&](std::size_t i) {
    Rng rng(stream, i);
    for (int j = 0; j < d; ++j) m.at(i, j) = rng.uniform();
  });
  return m;
}

SampleMatrix sample_comonotone(RngStream stream, int d, std::size_t n,
                               Exec exec) {
  SampleMatrix m(n, d, MarginTag::uniform);
  for_each_index(n, exec, [&](std::size_t i) {
    Rng rng(stream, i);
    const double u = rng.uniform();
    for (int j = 0; j < d; ++j) m.at(i, j) = u;
  });
  return m;
}

// Conditional-distribution sampler for the bivariate Joe2000 copula. With
// t1 = psi^{-1}(v1), the conditional cdf given U1 = v1 is
// psi'(t1 + t2) / psi'(t1) = exp(t1^alpha - (t1 + t2)^alpha), which inverts
// in closed form: t2 = (t1^alpha - ln v2)^{1/alpha} - t1.
SampleMatrix sample_joe2000_bivariate(const Generator& gen, RngStream stream,
                                      std::size_t n, Exec exec) {
  const double a = gen.shape();
  SampleMatrix m(n, 2, MarginTag::uniform);
  for_each_index(n, exec, [&](std::size_t i) {
    Rng rng(stream, i);
    const double v1 = rng.uniform();
    const double v2 = rng.uniform();
    const double t1 = gen.psi_inverse(v1);
    const double t2 =
        std::pow(std::pow(t1, a) - std::log(v2), 1.0 / a) - t1;
    m.at(i, 0) = v1;
    m.at(i, 1) = std::clamp(gen.psi(std::max(t2, 0.0)), 0.0, 1.0);
  });
  return m;
}

SampleMatrix sample_archimedean_model(const Generator& gen, int d,
                                      RngStream stream, std::size_t n,
                                      Exec exec) {
  switch (gen.kind()) {
    case Generator::Kind::acig:
      return sample_archimedean_frailty(RadialLaw::inverse_gamma(gen.shape()),
                                        gen, d, stream, n, exec);
    case Generator::Kind::gumbel: {
      if (gen.shape() == 1.0) return sample_uniform_iid(stream, d, n, exec);
      return sample_archimedean_frailty(
          RadialLaw::positive_stable(1.0 / gen.shape()), gen, d, stream, n,
          exec);
    }
    case Generator::Kind::joe2000: {
      if (d != 2)
        throw unsupported_error(
            "sampling the joe2000 copula is implemented for d = 2 only");
      return sample_joe2000_bivariate(gen, stream, n, exec);
    }
    case Generator::Kind::williamson:
      return sample_archimedean_scale_mixture(*gen.williamson_law(), d, stream,
                                              n, exec);
  }
  throw std::logic_error("sample_archimedean_model: unreachable");
}

SampleMatrix elliptical_with_margins(double rho, const RadialLaw& law,
                                     RngStream stream, std::size_t n, Exec exec,
                                     const std::function<double(double)>& cdf) {
  SampleMatrix m = sample_elliptical(rho, law, stream, n, exec);
  if (cdf) {
    for_each_index(m.rows, exec, [&](std::size_t i) {
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = cdf(m.at(i, j));
    });
    m.tag = MarginTag::uniform;
    return m;
  }
  return rank_transform(m);
}

}  // namespace

SampleMatrix sample_model(const CopulaModel& model, RngStream stream,
                          std::size_t n, Exec exec) {
  using Kind = CopulaModel::Kind;
  switch (model.kind()) {
    case Kind::independence:
      return sample_uniform_iid(stream, model.dim(), n, exec);
    case Kind::comonotone:
      return sample_comonotone(stream, model.dim(), n, exec);
    case Kind::archimedean:
      return sample_archimedean_model(model.generator(), model.dim(), stream,
                                      n, exec);
    case Kind::extreme_value: {
      const auto& a = model.pickands();
      switch (a.kind()) {
        case copulas::PickandsFn::Kind::indep_sum:
          return sample_uniform_iid(stream, model.dim(), n, exec);
        case copulas::PickandsFn::Kind::comonotone_max:
          return sample_comonotone(stream, model.dim(), n, exec);
        case copulas::PickandsFn::Kind::logistic:
          // the logistic EV copula coincides with the Gumbel Archimedean one
          return sample_archimedean_model(Generator::gumbel(a.theta()),
                                          model.dim(), stream, n, exec);
      }
      throw std::logic_error("sample_model: unreachable");
    }
    case Kind::gaussian:
      return elliptical_with_margins(
          model.rho(), RadialLaw::kotz(1.0, 0.5, 1.0), stream, n, exec,
          [](double x) { return num::normal_cdf(x); });
    case Kind::student: {
      const double nu = model.nu();
      return elliptical_with_margins(
          model.rho(), RadialLaw::gig_t(nu), stream, n, exec,
          [nu](double x) { return num::student_t_cdf(x, nu); });
    }
    case Kind::kotz:
      return elliptical_with_margins(
          model.rho(),
          RadialLaw::kotz(model.kotz_n(), model.kotz_beta(), model.kotz_xi()),
          stream, n, exec, nullptr);
  }
  throw std::logic_error("sample_model: unreachable");
}

}  // namespace tailorder::sampling
