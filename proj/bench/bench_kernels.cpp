// Serial-vs-OpenMP comparison for the row-parallel kernels. Both policies
// produce bit-identical output (per-row RNG derivation), so the serial runs
// double as a correctness reference; see the sampling tests.

#include <benchmark/benchmark.h>

#include "tailorder/sampling.hpp"

namespace {

namespace samp = tailorder::sampling;
using tailorder::Exec;
using tailorder::RngStream;
using tailorder::Side;
using tailorder::radial::RadialLaw;

constexpr RngStream kStream{12345, 0};

template <Exec E>
void BM_Simplex(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto m = samp::sample_simplex(kStream, 3, n, E);
    benchmark::DoNotOptimize(m.data.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_ScaleMixtureDagum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RadialLaw law = RadialLaw::dagum(0.6, 1.8, 1.0);
  for (auto _ : state) {
    auto m = samp::sample_archimedean_scale_mixture(law, 2, kStream, n, E);
    benchmark::DoNotOptimize(m.data.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_EllipticalStudent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RadialLaw law = RadialLaw::gig_t(4.0);
  for (auto _ : state) {
    auto m = samp::sample_elliptical(0.5, law, kStream, n, E);
    benchmark::DoNotOptimize(m.data.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec E>
void BM_EmpiricalDiagonal(benchmark::State& state) {
  // uniform-tagged input so the count kernel is timed, not the rank transform
  static const auto m =
      samp::rank_transform(samp::sample_simplex(kStream, 2, 1 << 20));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        samp::empirical_copula_diagonal(m, 0.3, Side::lower, E));
  }
  state.SetItemsProcessed(state.iterations() * (1 << 20));
}

BENCHMARK(BM_Simplex<Exec::serial>)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Simplex<Exec::parallel>)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScaleMixtureDagum<Exec::serial>)
    ->Arg(1 << 16)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScaleMixtureDagum<Exec::parallel>)
    ->Arg(1 << 16)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EllipticalStudent<Exec::serial>)
    ->Arg(1 << 18)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EllipticalStudent<Exec::parallel>)
    ->Arg(1 << 18)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EmpiricalDiagonal<Exec::serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EmpiricalDiagonal<Exec::parallel>)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
