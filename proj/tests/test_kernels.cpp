#include <cmath>

#include "doctest.h"
#include "wfl/kernels/series_kernel.hpp"
#include "wfl/pairing.hpp"
#include "wfl/parallel.hpp"
#include "wfl/sampling.hpp"
#include "wfl/wick.hpp"

using namespace wfl;

namespace {

kernels::SeriesProblem random_problem(Rng& rng, int n, int cutoff, std::span<const double> coeffs) {
  kernels::SeriesProblem p;
  p.n = n;
  p.cutoff = cutoff;
  p.coefficients = coeffs;
  for (int e = 0; e < ContractionMatrix::pair_count(n); ++e)
    p.pair_values.push_back({rng.uniform(-0.02, 0.02), rng.uniform(-0.02, 0.02)});
  return p;
}

}  // namespace

TEST_CASE("series kernels agree") {
  Rng rng(41);
  const auto coeffs = exp_phi2_coefficients(4.0, 14);
  for (int n = 2; n <= 5; ++n) {
    const int cutoff = n <= 3 ? 14 : 8;
    for (int split = 0; split < n; ++split) {
      auto p = random_problem(rng, n, cutoff, coeffs.values());
      p.cross_split = split;
      const auto a = kernels::series_sum_serial(p);
      const auto b = kernels::series_sum_omp(p);
      CHECK(std::abs(a.value - b.value) <= 1e-15 * (1 + std::abs(a.value)));
      REQUIRE(a.degree_sums.size() == b.degree_sums.size());
      for (std::size_t d = 0; d < a.degree_sums.size(); ++d)
        CHECK(std::abs(a.degree_sums[d] - b.degree_sums[d]) <= 1e-15 * (1 + std::abs(a.degree_sums[d])));
    }
  }
}

TEST_CASE("series kernel is independent of the thread count") {
  Rng rng(43);
  const auto coeffs = exp_phi2_coefficients(4.0, 10);
  const auto p = random_problem(rng, 4, 10, coeffs.values());
  set_thread_count(1);
  const auto one = kernels::series_sum_omp(p);
  set_thread_count(4);
  const auto four = kernels::series_sum_omp(p);
  set_thread_count(default_thread_count());
  CHECK(one.value == four.value);
  CHECK(one.terms == four.terms);
}

TEST_CASE("term bound counter") {
  Rng rng(47);
  const auto coeffs = exp_phi2_coefficients(4.0, 10);
  auto p = random_problem(rng, 3, 10, coeffs.values());
  p.check_term_bound = true;
  p.term_bound_ratio = 1e-30;
  p.term_bound_prefactor = 1.0;
  const auto a = kernels::series_sum_serial(p);
  const auto b = kernels::series_sum_omp(p);
  CHECK(a.term_bound_violations > 0);
  CHECK(a.term_bound_violations == b.term_bound_violations);
}

TEST_CASE("lattice kernel matches the pointwise reference") {
  const auto f = AnalyticTestFunction::gaussian_monomial({1.0, 0.8, 1.2, 1.0}, {0.1, 0, -0.2, 0}, {1, 0, 2, 0});
  LatticeSpec grid;
  grid.spacing = 0.15;
  grid.estimate_error = false;
  const auto G = [](cplx w) { return w + 3.0 * w * w; };
  for (const FourVector eta : {FourVector(-0.3, 0, 0, 0), FourVector(-0.6, 0.1, 0, 0)}) {
    const PairingValue fast = pair_two_point(G, f, eta, Mass{}, grid);
    const PairingValue ref = pair_two_point_reference(G, f, eta, Mass{}, grid);
    CHECK(fast.lattice_points == ref.lattice_points);
    CHECK(std::abs(fast.value - ref.value) <= 1e-12 * std::abs(ref.value));
  }
  grid.use_openmp = false;
  const PairingValue serial = pair_two_point(G, f, FourVector(-0.3, 0, 0, 0), Mass{}, grid);
  grid.use_openmp = true;
  set_thread_count(3);
  const PairingValue omp = pair_two_point(G, f, FourVector(-0.3, 0, 0, 0), Mass{}, grid);
  set_thread_count(default_thread_count());
  CHECK(serial.value == omp.value);
}
