#include <benchmark/benchmark.h>

#include <complex>

#include "knotslope/apoly.hpp"
#include "knotslope/reference.hpp"
#include "knotslope/representation.hpp"
#include "knotslope/slope.hpp"

using namespace knotslope;

static void BM_RileyRoots(benchmark::State& state) {
  const auto pres = figure_eight();
  for (auto _ : state) benchmark::DoNotOptimize(riley_family(pres, {1.4, 0.6}));
}
BENCHMARK(BM_RileyRoots);

static void BM_FoxSlope(benchmark::State& state) {
  const auto roots = riley_family(figure_eight(), {1.4, 0.6});
  const AugmentedPresentation aug = augment(figure_eight());
  const InvariantVector v = invariant_vector(roots[0].rep);
  for (auto _ : state) benchmark::DoNotOptimize(compute_slope(aug, roots[0].rep, v.v));
}
BENCHMARK(BM_FoxSlope);

static void BM_ApolyTrefoil(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compute_apoly_twobridge(*trefoil()));
}
BENCHMARK(BM_ApolyTrefoil)->Unit(benchmark::kMillisecond);

static void BM_ApolyFigureEight(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compute_apoly_twobridge(*figure_eight()));
}
BENCHMARK(BM_ApolyFigureEight)->Unit(benchmark::kMillisecond);

static void BM_Resultant(benchmark::State& state) {
  const UniPoly phi = riley_polynomial(*figure_eight());
  UniPoly other = phi.shifted(1) + UniPoly::constant(parse_bilaurent("L - M^2"));
  for (auto _ : state) benchmark::DoNotOptimize(resultant(phi, other));
}
BENCHMARK(BM_Resultant)->Unit(benchmark::kMicrosecond);

static void BM_LogGauss(benchmark::State& state) {
  const BiLaurent a = compute_apoly_twobridge(*figure_eight()).polynomial;
  const auto roots = riley_family(figure_eight(), {1.4, 0.6});
  const BoundaryData bd = boundary_data(roots[0].rep);
  for (auto _ : state)
    benchmark::DoNotOptimize(log_gauss(a, bd.longitude_eigenvalue, bd.meridian_eigenvalue));
}
BENCHMARK(BM_LogGauss);
BENCHMARK_MAIN();
