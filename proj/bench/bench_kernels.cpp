#include <benchmark/benchmark.h>

#include "wfl/kernels/series_kernel.hpp"
#include "wfl/pairing.hpp"
#include "wfl/wick.hpp"

namespace {

using namespace wfl;

kernels::SeriesProblem problem(int n, int cutoff, const CoefficientSequence& coeffs) {
  kernels::SeriesProblem p;
  p.n = n;
  p.cutoff = cutoff;
  p.coefficients = coeffs.values();
  for (int e = 0; e < ContractionMatrix::pair_count(n); ++e) p.pair_values.push_back({0.01 / (e + 1), -0.005 * e});
  return p;
}

void BM_SeriesSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int cutoff = default_cutoff(n);
  const auto coeffs = exp_phi2_coefficients(6.0, cutoff);
  const auto p = problem(n, cutoff, coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::series_sum_serial(p).value);
}

void BM_SeriesOmp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int cutoff = default_cutoff(n);
  const auto coeffs = exp_phi2_coefficients(6.0, cutoff);
  const auto p = problem(n, cutoff, coeffs);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::series_sum_omp(p).value);
}

void BM_LatticeReference(benchmark::State& state) {
  const auto f = AnalyticTestFunction::gaussian(4);
  LatticeSpec grid;
  grid.spacing = 0.2;
  grid.estimate_error = false;
  const auto G = [](cplx w) { return w; };
  for (auto _ : state)
    benchmark::DoNotOptimize(pair_two_point_reference(G, f, FourVector(-0.3, 0, 0, 0), Mass{}, grid).value);
}

void BM_LatticeFast(benchmark::State& state) {
  const auto f = AnalyticTestFunction::gaussian(4);
  LatticeSpec grid;
  grid.spacing = 0.2;
  grid.estimate_error = false;
  const auto G = [](cplx w) { return w; };
  for (auto _ : state) benchmark::DoNotOptimize(pair_two_point(G, f, FourVector(-0.3, 0, 0, 0), Mass{}, grid).value);
}

}  // namespace

BENCHMARK(BM_SeriesSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SeriesOmp)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LatticeReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LatticeFast)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
