#include <cmath>

#include "wfl/errors.hpp"
#include "wfl/pairing.hpp"
#include "wfl/quadrature.hpp"

namespace wfl {

cplx fourier_transform(const AnalyticTestFunction& f, std::span<const double> p) {
  if (static_cast<int>(p.size()) != f.dimension()) throw DomainError("fourier_transform: wrong dimension");
  CompensatedComplexSum total;
  for (std::size_t t = 0; t < f.terms().size(); ++t) {
    cplx prod = f.terms()[t].coef;
    for (int k = 0; k < f.dimension() && prod != 0.0; ++k) {
      const double R = f.truncation_radius(k, 0.0, 1e-17);
      const int panels = 8 + static_cast<int>(std::ceil(R * std::abs(p[k]) / M_PI));
      const double pk = p[k];
      auto integrand = [&](double x) { return f.factor(t, k, {x, 0.0}) * std::polar(1.0, pk * x); };
      prod *= composite_gauss_legendre<cplx>(integrand, -R, R, panels, 16);
    }
    total.add(prod);
  }
  return total.value();
}

double momentum_growth_probe(const AnalyticTestFunction& f, double l, const MomentumGrid& grid) {
  if (!(l >= 0.0)) throw DomainError("momentum_growth_probe: l must be nonnegative");
  if (!(grid.extent > 0.0) || !(grid.spacing > 0.0)) throw DomainError("momentum_growth_probe: invalid lattice");
  const int d = f.dimension();
  const long m = static_cast<long>(std::floor(grid.extent / grid.spacing));
  const long side = 2 * m + 1;
  long total = 1;
  for (int k = 0; k < d; ++k) {
    if (total > 100'000'000 / side) throw DomainError("momentum_growth_probe: lattice too large");
    total *= side;
  }
  double best = 0.0;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (long idx = 0; idx < total; ++idx) {
    std::vector<double> p(d);
    long rest = idx;
    double l1 = 0.0;
    for (int k = 0; k < d; ++k) {
      p[k] = static_cast<double>(rest % side - m) * grid.spacing;
      rest /= side;
      l1 += std::abs(p[k]);
    }
    best = std::max(best, std::abs(fourier_transform(f, p)) * std::exp(l * l1));
  }
  return best;
}

}  // namespace wfl
