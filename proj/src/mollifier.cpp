#include <cmath>

#include "wfl/errors.hpp"
#include "wfl/pairing.hpp"
#include "wfl/quadrature.hpp"

namespace wfl {

namespace {

constexpr double kFejerNorm = 3.0 / (4.0 * M_PI);

double fejer(double u) {
  const double v = 0.5 * u;
  const double s = std::abs(v) < 1e-4 ? 1.0 - v * v / 6.0 : std::sin(v) / v;
  const double s2 = s * s;
  return kFejerNorm * s2 * s2;
}

double bump(double k) { return std::abs(k) < 1.0 ? std::exp(-1.0 / (1.0 - k * k)) : 0.0; }

// Transform of the bump, 2 int_0^1 b(k) cos(k u) dk.
double bump_transform(double u) {
  const int panels = std::max(8, static_cast<int>(std::ceil(std::abs(u) / 2.0)));
  return 2.0 * composite_gauss_legendre<double>([u](double k) { return bump(k) * std::cos(k * u); }, 0.0, 1.0,
                                                panels, 16);
}

// |b^|^2 integrates to 2 pi int b^2 by Plancherel.
double bump_square_norm() {
  static const double v =
      2.0 * M_PI * composite_gauss_legendre<double>([](double k) { return bump(k) * bump(k); }, -1.0, 1.0, 32, 16);
  return v;
}

}  // namespace

double mollifier_density(double u, const MollifierSpec& spec) {
  const double v = spec.scale * u;
  switch (spec.kind) {
    case MollifierKind::SquaredFejer:
      return spec.scale * fejer(v);
    case MollifierKind::BumpTransform: {
      const double b = bump_transform(v);
      return spec.scale * b * b / bump_square_norm();
    }
  }
  return 0.0;
}

double mollifier_support_radius(const MollifierSpec& spec) {
  // Fejer tail mass 8/(pi R^3); the bump transform decays like exp(-2 sqrt(2u))
  return (spec.kind == MollifierKind::SquaredFejer ? 2000.0 : 200.0) / spec.scale;
}

void MollifierSpec::validate() const {
  if (order < 2 || order > 256) throw DomainError("mollifier order must be in [2, 256]");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("mollifier scale must be positive");
}

double mollifier_mass(int nu, const MollifierSpec& spec) {
  if (nu < 1) throw DomainError("mollifier_mass: nu must be a positive integer");
  spec.validate();
  const double R = mollifier_support_radius(spec) / nu;
  const int panels = static_cast<int>(std::ceil(mollifier_support_radius(spec) * spec.scale));
  auto g_nu = [nu, &spec](double u) { return nu * mollifier_density(nu * u, spec); };
  return composite_gauss_legendre<double>(g_nu, -R, R, panels, spec.order);
}

double mollifier_moment(int N, int d, const MollifierSpec& spec) {
  if (N < 0 || d < 1) throw DomainError("mollifier_moment: need N >= 0, d >= 1");
  spec.validate();
  if (spec.kind == MollifierKind::SquaredFejer && N >= 3) return std::numeric_limits<double>::infinity();
  if (N == 0) return 1.0;
  // density of max_k |x_k| is d F(r)^{d-1} 2 g(r), F(r) = int_{-r}^{r} g
  const double R = mollifier_support_radius(spec);
  const auto& rule = gauss_legendre(spec.order);
  const int panels = static_cast<int>(std::ceil(R * spec.scale));
  const double h = R / panels;
  CompensatedSum total;
  double F_start = 0.0;  // F at the left end of the current panel
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = a + 0.5 * h * (rule.nodes[i] + 1.0);
      double F = F_start;
      if (d > 1) F += 2.0 * composite_gauss_legendre<double>([&spec](double u) { return mollifier_density(u, spec); },
                                                              a, r, 1, spec.order);
      panel += rule.weights[i] * std::pow(1.0 + r, N) * d * std::pow(F, d - 1) * 2.0 * mollifier_density(r, spec);
    }
    total.add(0.5 * h * panel);
    F_start += 2.0 * composite_gauss_legendre<double>([&spec](double u) { return mollifier_density(u, spec); }, a,
                                                       a + h, 1, spec.order);
  }
  if (spec.kind == MollifierKind::SquaredFejer) {
    // g(u) averages 6 c / (s^3 u^4) at large u
    total.add(12.0 * kFejerNorm * d * std::pow(R, N - 3) / ((3.0 - N) * std::pow(spec.scale, 3)));
  }
  return total.value();
}

TestFunction mollify(const AnalyticTestFunction& f, int nu, const MollifierSpec& spec) {
  if (nu < 1) throw DomainError("mollify: nu must be a positive integer");
  spec.validate();
  auto eval = [f, nu, spec](std::span<const cplx> z) -> cplx {
    CompensatedComplexSum total;
    for (std::size_t t = 0; t < f.terms().size(); ++t) {
      const GaussianTerm& term = f.terms()[t];
      cplx prod = term.coef;
      for (int k = 0; k < f.dimension() && prod != 0.0; ++k) {
        const double x0 = z[k].real();
        const double y0 = z[k].imag();
        const double R = f.truncation_radius(k, std::abs(y0), 1e-15);
        const double hp = std::min(2.0 / (nu * spec.scale), 0.5 * term.width[k]);
        const int panels = static_cast<int>(std::ceil(2.0 * R / hp));
        auto integrand = [&](double x) { return nu * mollifier_density(nu * (x0 - x), spec) * f.factor(t, k, {x, y0}); };
        prod *= composite_gauss_legendre<cplx>(integrand, -R, R, panels, spec.order);
      }
      total.add(prod);
    }
    return total.value();
  };
  return TestFunction(f.dimension(), eval, f.search_radius());
}

}  // namespace wfl
