#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace wfl::kernels {

/**
 * Inputs for sum_{|R| <= cutoff} (D_R / R!) w^R over n points.
 *
 * pair_values[e] is w_ij for the e-th pair in ContractionMatrix order.
 * When cross_split = k > 0, only matrices with a nonzero entry r_ij,
 * i <= k < j (1-based), contribute.
 */
struct SeriesProblem {
  int n = 2;
  int cutoff = 0;
  std::vector<std::complex<double>> pair_values;
  std::span<const double> coefficients;
  int cross_split = 0;
  bool check_term_bound = false;
  double term_bound_ratio = 0.0;
  double term_bound_prefactor = 1.0;
};

struct SeriesSum {
  std::complex<double> value;
  std::vector<std::complex<double>> degree_sums;  // index = |R|
  std::uint64_t terms = 0;                        // nonzero terms visited
  std::uint64_t term_bound_violations = 0;
};

/// Reference: enumerate_contractions + big_D per term, one compensated sum per degree.
SeriesSum series_sum_serial(const SeriesProblem& problem);

/**
 * Recursive enumeration with incremental products and early pruning on d_r = 0,
 * split into (degree, r_12) work items run under OpenMP. Each item owns a
 * compensated accumulator and items are reduced in a fixed order, so the result
 * does not depend on the thread count.
 */
SeriesSum series_sum_omp(const SeriesProblem& problem);

}  // namespace wfl::kernels
