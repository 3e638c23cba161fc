#pragma once

#include <cstddef>
#include <vector>

#include "tailorder/copulas.hpp"
#include "tailorder/defs.hpp"
#include "tailorder/radial.hpp"
#include "tailorder/rng.hpp"

namespace tailorder::sampling {

enum class MarginTag { uniform, normal_scores, raw };

// Row-major n x d sample block.
struct SampleMatrix {
  std::size_t rows = 0;
  int cols = 0;
  MarginTag tag = MarginTag::raw;
  std::vector<double> data;

  SampleMatrix() = default;
  SampleMatrix(std::size_t n, int d, MarginTag t)
      : rows(n), cols(d), tag(t), data(n * static_cast<std::size_t>(d)) {}
  double& at(std::size_t i, int j) { return data[i * cols + j]; }
  double at(std::size_t i, int j) const { return data[i * cols + j]; }
};

/// Rows i.i.d. uniform on the simplex {x >= 0 : sum x_i = 1} (normalized
/// unit-rate exponentials).
SampleMatrix sample_simplex(RngStream stream, int d, std::size_t n,
                            Exec exec = Exec::parallel);

/// Rows i.i.d. uniform on the unit sphere (normalized standard normals).
SampleMatrix sample_sphere(RngStream stream, int d, std::size_t n,
                           Exec exec = Exec::parallel);

/// Archimedean sampler from the scale-mixture representation X = R * S with
/// S uniform on the simplex: U_j = psi(X_j) where psi is the Williamson
/// d-transform of the radial law (tabulated on a 4096-point log grid with
/// monotone cubic interpolation; direct quadrature outside the table).
SampleMatrix sample_archimedean_scale_mixture(const radial::RadialLaw& law,
                                              int d, RngStream stream,
                                              std::size_t n,
                                              Exec exec = Exec::parallel);

/// Archimedean sampler from the frailty representation: given H = xi,
/// U_j = psi(E_j / xi) with E_j unit exponentials. psi must be the Laplace
/// transform of H; no runtime pairing check is possible.
SampleMatrix sample_archimedean_frailty(const radial::RadialLaw& frailty,
                                        const generators::Generator& psi,
                                        int d, RngStream stream, std::size_t n,
                                        Exec exec = Exec::parallel);

/// Bivariate elliptical sampler X = R A U with A = [[1,0],[rho,sqrt(1-rho^2)]].
SampleMatrix sample_elliptical(double rho, const radial::RadialLaw& law,
                               RngStream stream, std::size_t n,
                               Exec exec = Exec::parallel);

/// Pseudo-observations rank/(n+1) per column; ties broken by row order.
SampleMatrix rank_transform(const SampleMatrix& m);

/// Empirical copula diagonal: lower counts rows with all coordinates <= u,
/// upper counts rows with all coordinates > 1-u. Non-uniform matrices are
/// rank-transformed first.
double empirical_copula_diagonal(const SampleMatrix& m, double u, Side side,
                                 Exec exec = Exec::parallel);

/// Replaces uniform entries by standard normal scores.
void apply_normal_scores(SampleMatrix& m, Exec exec = Exec::parallel);

/// Samples any supported copula model with uniform margins, routing to the
/// appropriate stochastic representation.
SampleMatrix sample_model(const copulas::CopulaModel& model, RngStream stream,
                          std::size_t n, Exec exec = Exec::parallel);

}  // namespace tailorder::sampling
