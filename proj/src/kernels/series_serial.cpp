#include <cmath>

#include "wfl/errors.hpp"
#include "wfl/kernels/series_kernel.hpp"
#include "wfl/quadrature.hpp"
#include "wfl/wick.hpp"

namespace wfl::kernels {

SeriesSum series_sum_serial(const SeriesProblem& problem) {
  const int n = problem.n;
  const int E = ContractionMatrix::pair_count(n);
  if (static_cast<int>(problem.pair_values.size()) != E) throw DomainError("series: wrong number of pair values");
  if (static_cast<int>(problem.coefficients.size()) <= problem.cutoff) {
    throw DomainError("series: coefficients do not cover the cutoff degree");
  }
  SeriesSum out;
  out.degree_sums.assign(problem.cutoff + 1, {});
  CompensatedComplexSum total;
  for (int deg = 0; deg <= problem.cutoff; ++deg) {
    CompensatedComplexSum block;
    for (const auto& R : enumerate_contractions(n, deg)) {
      if (problem.cross_split > 0) {
        bool crosses = false;
        for (int i = 0; i < problem.cross_split && !crosses; ++i)
          for (int j = problem.cross_split; j < n; ++j)
            if (R.at(i, j) != 0) {
              crosses = true;
              break;
            }
        if (!crosses) continue;
      }
      double D = 1.0;
      for (int rj : R.column_sums()) D *= problem.coefficients[rj];
      if (D == 0.0) continue;
      std::complex<double> w = 1.0;
      for (int e = 0; e < E; ++e) {
        const int r = R.upper()[e];
        if (r > 0) w *= std::pow(problem.pair_values[e], r);
      }
      const std::complex<double> term = (D / R.factorial()) * w;
      ++out.terms;
      if (problem.check_term_bound) {
        const double bound = problem.term_bound_prefactor * std::pow(problem.term_bound_ratio, deg);
        if (std::abs(term) > bound * (1.0 + 1e-10) + 1e-300) ++out.term_bound_violations;
      }
      block.add(term);
    }
    out.degree_sums[deg] = block.value();
    total.add(out.degree_sums[deg]);
  }
  out.value = total.value();
  return out;
}

}  // namespace wfl::kernels
