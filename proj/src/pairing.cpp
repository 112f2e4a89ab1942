#include <cmath>

#include "wfl/errors.hpp"
#include "wfl/kernels/series_kernel.hpp"
#include "wfl/pairing.hpp"
#include "wfl/quadrature.hpp"

namespace wfl {

namespace {

struct Axis {
  std::vector<double> x;
  double eta = 0.0;
};

// Nodes i h, |i h| <= R_k, on every coordinate of f.
std::vector<Axis> make_axes(const AnalyticTestFunction& f, std::span<const FourVector> eta, double h, double tol) {
  const int d = f.dimension();
  std::vector<Axis> axes(d);
  for (int k = 0; k < d; ++k) {
    axes[k].eta = eta[k / 4][k % 4];
    const double R = f.truncation_radius(k, std::abs(axes[k].eta), tol);
    const long imax = static_cast<long>(std::floor(R / h));
    for (long i = -imax; i <= imax; ++i) axes[k].x.push_back(static_cast<double>(i) * h);
  }
  return axes;
}

void check_eta(const AnalyticTestFunction& f, std::span<const FourVector> eta, int n) {
  if (n < 2) throw DomainError("pairing: need n >= 2");
  if (static_cast<int>(eta.size()) != n - 1) throw DomainError("pairing: need n - 1 imaginary shifts");
  if (f.dimension() != 4 * (n - 1)) throw DomainError("pairing: test function must live on R^{4(n-1)}");
  for (std::size_t j = 0; j < eta.size(); ++j) {
    if (!in_cone_v_minus(eta[j], 0.0)) {
      throw DomainError("pairing: eta_" + std::to_string(j + 1) + " is not in the past cone");
    }
  }
}

std::uint64_t lattice_size(const std::vector<Axis>& axes) {
  std::uint64_t s = 1;
  for (const auto& a : axes) s *= a.x.size();
  return s;
}

/**
 * n = 2 lattice sum of G(w(xi + i eta)) f(xi + i eta) with per-axis tables.
 * Parallel over the outermost axis; slices are reduced in index order.
 */
template <typename G>
cplx two_point_lattice(const AnalyticTestFunction& f, const FourVector& eta, double h, double tol, Mass m,
                       const QuadratureSpec& q, const G& g, bool use_omp, std::uint64_t* points) {
  const FourVector etas[1] = {eta};
  const auto axes = make_axes(f, etas, h, tol);
  const std::size_t T = f.terms().size();
  std::array<std::vector<cplx>, 4> sq;
  std::array<std::vector<std::vector<cplx>>, 4> F;  // F[mu][t][i]
  for (int mu = 0; mu < 4; ++mu) {
    const auto& ax = axes[mu];
    sq[mu].resize(ax.x.size());
    F[mu].assign(T, std::vector<cplx>(ax.x.size()));
    for (std::size_t i = 0; i < ax.x.size(); ++i) {
      const cplx z{ax.x[i], ax.eta};
      sq[mu][i] = z * z;
      for (std::size_t t = 0; t < T; ++t) F[mu][t][i] = f.factor(t, mu, z);
    }
  }
  std::vector<cplx> coef(T);
  for (std::size_t t = 0; t < T; ++t) coef[t] = f.terms()[t].coef;

  const long n0 = static_cast<long>(axes[0].x.size());
  const std::size_t n1 = axes[1].x.size(), n2 = axes[2].x.size(), n3 = axes[3].x.size();
  std::vector<cplx> slices(n0);
  const double c4 = 1.0 / (4.0 * M_PI * M_PI);

#pragma omp parallel if (use_omp)
  {
    std::vector<cplx> p2(T);
#pragma omp for schedule(dynamic, 1)
    for (long i0 = 0; i0 < n0; ++i0) {
      CompensatedComplexSum acc;
      for (std::size_t i1 = 0; i1 < n1; ++i1) {
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
          for (std::size_t t = 0; t < T; ++t) p2[t] = coef[t] * F[0][t][i0] * F[1][t][i1] * F[2][t][i2];
          const cplx s012 = sq[0][i0] - sq[1][i1] - sq[2][i2];
          for (std::size_t i3 = 0; i3 < n3; ++i3) {
            cplx fv = 0.0;
            for (std::size_t t = 0; t < T; ++t) fv += p2[t] * F[3][t][i3];
            cplx w;
            if (m.massless()) {
              w = -c4 / (s012 - sq[3][i3]);
            } else {
              const ComplexFourVector zeta(FourVector(axes[0].x[i0], axes[1].x[i1], axes[2].x[i2], axes[3].x[i3]),
                                           eta);
              w = delta_plus(zeta, m, q);
            }
            acc.add(g(w) * fv);
          }
        }
      }
      slices[i0] = acc.value();
    }
  }
  CompensatedComplexSum total;
  for (const cplx& s : slices) total.add(s);
  if (points) *points = lattice_size(axes);
  return total.value() * (h * h * h * h);
}

/**
 * General n: odometer over all 4(n-1) axes, pair values from partial sums of
 * the difference variables. G receives the n(n-1)/2 propagator values.
 */
template <typename G>
cplx general_lattice(const AnalyticTestFunction& f, std::span<const FourVector> eta, int n, double h, double tol,
                     Mass m, const QuadratureSpec& q, const G& g, bool use_omp, std::uint64_t* points) {
  const auto axes = make_axes(f, eta, h, tol);
  const int d = f.dimension();
  const int E = ContractionMatrix::pair_count(n);
  const long n0 = static_cast<long>(axes[0].x.size());
  std::vector<cplx> slices(n0);

#pragma omp parallel if (use_omp)
  {
    std::vector<std::size_t> idx(d, 0);
    std::vector<cplx> z(d);
    std::vector<cplx> w(E);
    std::vector<ComplexFourVector> xi(n - 1);
#pragma omp for schedule(dynamic, 1)
    for (long i0 = 0; i0 < n0; ++i0) {
      CompensatedComplexSum acc;
      std::fill(idx.begin(), idx.end(), 0);
      idx[0] = static_cast<std::size_t>(i0);
      bool done = false;
      while (!done) {
        for (int k = 0; k < d; ++k) z[k] = {axes[k].x[idx[k]], axes[k].eta};
        for (int j = 0; j < n - 1; ++j)
          for (int mu = 0; mu < 4; ++mu) xi[j].set(mu, z[4 * j + mu]);
        int e = 0;
        for (int i = 0; i < n; ++i) {
          ComplexFourVector zeta;
          for (int j = i + 1; j < n; ++j, ++e) {
            zeta += xi[j - 1];
            w[e] = delta_plus(zeta, m, q);
          }
        }
        acc.add(g(std::span<const cplx>(w)) * f(z));
        // advance axes 1..d-1
        int k = d - 1;
        while (k >= 1) {
          if (++idx[k] < axes[k].x.size()) break;
          idx[k] = 0;
          --k;
        }
        done = k < 1;
      }
      slices[i0] = acc.value();
    }
  }
  CompensatedComplexSum total;
  for (const cplx& s : slices) total.add(s);
  if (points) *points = lattice_size(axes);
  return total.value() * std::pow(h, d);
}

// Trapezoid sums factorize when the integrand is f alone.
cplx separable_lattice(const AnalyticTestFunction& f, std::span<const FourVector> eta, double h, double tol,
                       std::uint64_t* points) {
  const auto axes = make_axes(f, eta, h, tol);
  CompensatedComplexSum total;
  for (std::size_t t = 0; t < f.terms().size(); ++t) {
    cplx prod = f.terms()[t].coef;
    for (int k = 0; k < f.dimension(); ++k) {
      CompensatedComplexSum s;
      for (double x : axes[k].x) s.add(f.factor(t, k, {x, axes[k].eta}));
      prod *= h * s.value();
    }
    total.add(prod);
  }
  if (points) *points = lattice_size(axes);
  return total.value();
}

template <typename Eval>
PairingValue with_error_estimate(const LatticeSpec& grid, const Eval& eval) {
  if (!(grid.spacing > 0.0)) throw DomainError("lattice spacing must be positive");
  PairingValue out;
  out.value = eval(grid.spacing, &out.lattice_points);
  if (grid.estimate_error) {
    std::uint64_t coarse_points = 0;
    const cplx coarse = eval(grid.spacing * 4.0 / 3.0, &coarse_points);
    out.quadrature_error = std::abs(out.value - coarse);
    out.lattice_points += coarse_points;
  }
  return out;
}

cplx ipow(cplx w, int r) {
  cplx v = 1.0;
  for (int i = 0; i < r; ++i) v *= w;
  return v;
}

}  // namespace

PairingValue pair_monomial(const ContractionMatrix& R, const AnalyticTestFunction& f,
                           std::span<const FourVector> eta, Mass m, const LatticeSpec& grid, const QuadratureSpec& q) {
  const int n = R.n();
  check_eta(f, eta, n);
  const double tol = grid.truncation_tolerance;
  if (R.degree() == 0) {
    return with_error_estimate(grid, [&](double h, std::uint64_t* pts) { return separable_lattice(f, eta, h, tol, pts); });
  }
  if (n == 2) {
    const int r = R.upper()[0];
    auto g = [r](cplx w) { return ipow(w, r); };
    return with_error_estimate(grid, [&](double h, std::uint64_t* pts) {
      return two_point_lattice(f, eta[0], h, tol, m, q, g, grid.use_openmp, pts);
    });
  }
  const std::vector<int> r = R.upper();
  auto g = [&r](std::span<const cplx> w) {
    cplx v = 1.0;
    for (std::size_t e = 0; e < w.size(); ++e) v *= ipow(w[e], r[e]);
    return v;
  };
  return with_error_estimate(grid, [&](double h, std::uint64_t* pts) {
    return general_lattice(f, eta, n, h, tol, m, q, g, grid.use_openmp, pts);
  });
}

PairSeriesValue pair_series(const CoefficientSequence& coeffs, const AnalyticTestFunction& f,
                            std::span<const FourVector> eta, int cutoff, Mass m, const LatticeSpec& grid,
                            const QuadratureSpec& q, const StripNormOptions& norm_opts) {
  if (f.dimension() % 4 != 0) throw DomainError("pair_series: test function must live on R^{4(n-1)}");
  const int n = f.dimension() / 4 + 1;
  check_eta(f, eta, n);
  if (cutoff < 0 || coeffs.r_max() < cutoff) throw DomainError("pair_series: cutoff outside the stored coefficients");
  const double tol = grid.truncation_tolerance;

  PairingValue lattice;
  if (n == 2) {
    // D_R / R! = d_r^2 / r! for a single pair
    std::vector<cplx> a(cutoff + 1);
    double fact = 1.0;
    for (int r = 0; r <= cutoff; ++r) {
      if (r > 0) fact *= r;
      a[r] = coeffs[r] * coeffs[r] / fact;
    }
    auto g = [&a](cplx w) {
      cplx v = a.back();
      for (int r = static_cast<int>(a.size()) - 2; r >= 0; --r) v = v * w + a[r];
      return v;
    };
    lattice = with_error_estimate(grid, [&](double h, std::uint64_t* pts) {
      return two_point_lattice(f, eta[0], h, tol, m, q, g, grid.use_openmp, pts);
    });
  } else {
    auto g = [&](std::span<const cplx> w) {
      kernels::SeriesProblem p;
      p.n = n;
      p.cutoff = cutoff;
      p.pair_values.assign(w.begin(), w.end());
      p.coefficients = coeffs.values();
      return kernels::series_sum_serial(p).value;
    };
    lattice = with_error_estimate(grid, [&](double h, std::uint64_t* pts) {
      return general_lattice(f, eta, n, h, tol, m, q, g, grid.use_openmp, pts);
    });
  }

  PairSeriesValue out;
  out.value = lattice.value;
  out.quadrature_error = lattice.quadrature_error;
  out.lattice_points = lattice.lattice_points;
  out.cutoff_degree = cutoff;

  double l_cert = std::numeric_limits<double>::infinity();
  double l_strip = 0.0;
  for (const auto& e : eta) {
    l_cert = std::min(l_cert, std::sqrt(minkowski_square(e)));
    l_strip = std::max(l_strip, max_norm(e));
  }
  out.contraction_ratio_q = contraction_ratio(n, coeffs.growth_g(), l_cert);
  out.certified = out.contraction_ratio_q < 1.0;
  const int N = 4 * n - 3;
  const StripNormValue nv = strip_norm(f, StripNorm{l_strip, N}, norm_opts);
  out.norm = nv.value;
  out.norm_slack = nv.slack;
  out.norm_constant = polynomial_weight_integral(f.dimension(), N);
  if (out.certified) {
    const int E = ContractionMatrix::pair_count(n);
    out.tail_bound = out.norm_constant * out.norm * (1.0 + nv.slack) * std::pow(coeffs.growth_C(), 0.5 * n) *
                     tail_remainder(out.contraction_ratio_q, E, cutoff);
  }
  return out;
}

PairingValue pair_two_point(const std::function<cplx(cplx)>& G, const AnalyticTestFunction& f, const FourVector& eta,
                            Mass m, const LatticeSpec& grid, const QuadratureSpec& q) {
  const FourVector etas[1] = {eta};
  check_eta(f, etas, 2);
  return with_error_estimate(grid, [&](double h, std::uint64_t* pts) {
    return two_point_lattice(f, eta, h, grid.truncation_tolerance, m, q, G, grid.use_openmp, pts);
  });
}

PairingValue pair_two_point_reference(const std::function<cplx(cplx)>& G, const AnalyticTestFunction& f,
                                      const FourVector& eta, Mass m, const LatticeSpec& grid,
                                      const QuadratureSpec& q) {
  const FourVector etas[1] = {eta};
  check_eta(f, etas, 2);
  auto eval = [&](double h, std::uint64_t* pts) {
    const auto axes = make_axes(f, etas, h, grid.truncation_tolerance);
    CompensatedComplexSum acc;
    std::array<cplx, 4> z;
    for (double x0 : axes[0].x)
      for (double x1 : axes[1].x)
        for (double x2 : axes[2].x)
          for (double x3 : axes[3].x) {
            const ComplexFourVector zeta(FourVector(x0, x1, x2, x3), eta);
            for (std::size_t mu = 0; mu < 4; ++mu) z[mu] = zeta[mu];
            acc.add(G(delta_plus(zeta, m, q)) * f(z));
          }
    *pts = lattice_size(axes);
    return acc.value() * (h * h * h * h);
  };
  return with_error_estimate(grid, eval);
}

double polynomial_weight_integral(int d, double p) {
  if (d < 1 || !(p > d)) throw DomainError("polynomial_weight_integral: need p > d >= 1");
  // radial shells of the max-norm: d 2^d r^{d-1} dr, then a Beta integral
  return d * std::pow(2.0, d) * std::beta(static_cast<double>(d), p - d);
}

}  // namespace wfl
