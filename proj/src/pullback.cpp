#include <cmath>

#include "wfl/errors.hpp"
#include "wfl/pairing.hpp"
#include "wfl/quadrature.hpp"

namespace wfl {

TestFunction pullback_ft(const AnalyticTestFunction& f, int n, int nodes_per_panel, int panels) {
  if (n < 2) throw DomainError("pullback_ft: need n >= 2");
  if (f.dimension() != 4 * n) throw DomainError("pullback_ft: test function must live on R^{4n}");
  if (nodes_per_panel < 2 || panels < 1) throw DomainError("pullback_ft: invalid quadrature");

  auto eval = [f, n, nodes_per_panel, panels](std::span<const cplx> xi_flat) -> cplx {
    std::vector<ComplexFourVector> xi(n - 1);
    for (int j = 0; j < n - 1; ++j)
      for (int mu = 0; mu < 4; ++mu) xi[j].set(mu, xi_flat[4 * j + mu]);
    // a_j = x_j at X = 0
    const auto a = from_difference_coords(ComplexFourVector{}, xi);

    CompensatedComplexSum total;
    for (std::size_t t = 0; t < f.terms().size(); ++t) {
      const GaussianTerm& term = f.terms()[t];
      cplx prod = term.coef;
      for (int mu = 0; mu < 4 && prod != 0.0; ++mu) {
        double wsum = 0.0, bsum = 0.0;
        int degree = 0;
        for (int j = 0; j < n; ++j) {
          const int k = 4 * j + mu;
          const double iw2 = 1.0 / (term.width[k] * term.width[k]);
          wsum += iw2;
          bsum += (term.center[k] - a[j][mu].real()) * iw2;
          degree += term.powers[k];
        }
        const double centre = bsum / wsum;
        const double w_eff = 1.0 / std::sqrt(wsum);
        double rho = 4.0;
        while (-rho * rho + degree * std::log1p(rho) > std::log(1e-17)) rho += 0.25;
        auto integrand = [&](double X) {
          cplx v = 1.0;
          for (int j = 0; j < n; ++j) v *= f.factor(t, 4 * j + mu, X + a[j][mu]);
          return v;
        };
        prod *= composite_gauss_legendre<cplx>(integrand, centre - rho * w_eff, centre + rho * w_eff, panels,
                                               nodes_per_panel);
      }
      total.add(prod);
    }
    return total.value();
  };
  return TestFunction(4 * (n - 1), eval, 2.0 * f.search_radius());
}

}  // namespace wfl
