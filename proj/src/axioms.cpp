#include "wfl/axioms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "wfl/errors.hpp"
#include "wfl/sampling.hpp"

namespace wfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Sample {
  double margin = kInf;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

std::string describe(const ComplexFourVector& z) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "(%.6g%+.6gi, %.6g%+.6gi, %.6g%+.6gi, %.6g%+.6gi)", z.re[0], z.im[0], z.re[1],
                z.im[1], z.re[2], z.im[2], z.re[3], z.im[3]);
  return buf;
}

// Worst margin and the five worst samples, in sample order for ties.
void reduce(CheckReport& report, const std::vector<Sample>& samples) {
  report.samples = samples.size();
  report.worst_margin = kInf;
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a].margin < samples[b].margin; });
  for (std::size_t r = 0; r < order.size(); ++r) {
    const Sample& s = samples[order[r]];
    if (r == 0) report.worst_margin = s.margin;
    if (r < 5 && !s.detail.empty()) report.details.push_back(s.detail);
  }
  report.passed = report.worst_margin >= -report.tolerance;
}

// Runs fn(i) for every sample; exceptions become failing samples.
template <typename Fn>
std::vector<Sample> run_samples(int count, const Fn& fn) {
  std::vector<Sample> out(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < count; ++i) {
    try {
      out[i] = fn(i);
    } catch (const std::exception& e) {
      out[i] = {-kInf, "sample " + std::to_string(i) + ": " + e.what()};
    }
  }
  return out;
}

double relative_margin(double value, double bound, double err) { return (bound - value + err) / bound; }

cplx series_two_point(const ComplexFourVector& zeta, const CoefficientSequence& coeffs, int cutoff, Mass m,
                      const QuadratureSpec& q, double* tail) {
  const ComplexFourVector pts[2] = {zeta, ComplexFourVector{}};
  const SeriesValue s = wightman_series(pts, coeffs, cutoff, m, q);
  if (tail) *tail = s.tail_bound;
  return s.value;
}

}  // namespace

double CheckReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw DomainError("report has no metric '" + name + "'");
}

std::vector<CheckReport> check_propagator_bounds(Mass m, double l, int sample_count, std::uint64_t seed,
                                                 const QuadratureSpec& q) {
  if (!(l > 0.0)) throw DomainError("check_propagator_bounds: l must be positive");
  if (sample_count < 1) throw DomainError("check_propagator_bounds: need at least one sample");
  const double tol = 1e-9;
  std::vector<CheckReport> reports(3);

  // tube bound; every tenth sample sits on the x = 0 axis where the massless bound is attained
  std::vector<double> saturation(sample_count, 0.0);
  {
    CheckReport& r = reports[0];
    r.check_name = "tube_bound";
    r.tolerance = tol;
    auto samples = run_samples(sample_count, [&](int i) {
      Rng rng(seed, i);
      const FourVector y = sample_past_timelike(rng, 0.5, 3.0, 1.0);
      const FourVector x = i % 10 == 0 ? FourVector{} : sample_box(rng, 3.0);
      const ComplexFourVector z(x, y);
      const PropagatorValue v = delta_plus_detailed(z, m, q);
      const double bound = tube_bound(y);
      if (i % 10 == 0) saturation[i] = std::abs(1.0 - std::abs(v.value) / bound);
      return Sample{relative_margin(std::abs(v.value), bound, v.error_estimate),
                    "z = " + describe(z) + fmt(", |D| = %.17g, bound = %.17g", std::abs(v.value), bound)};
    });
    reduce(r, samples);
    double sat = 0.0;
    for (int i = 0; i < sample_count; i += 10) sat = std::max(sat, saturation[i]);
    r.metrics.push_back({"axis_saturation_defect", sat});
  }

  // pair bound on three-point configurations
  {
    CheckReport& r = reports[1];
    r.check_name = "pair_bound";
    r.tolerance = tol;
    auto samples = run_samples(sample_count, [&](int i) {
      Rng rng(seed ^ 0x5151ULL, i);
      ComplexFourVector pts[3];
      pts[0] = ComplexFourVector(sample_box(rng, 3.0), FourVector{});
      for (int j = 1; j < 3; ++j) {
        // Im(z_{j-1} - z_j) in V^-_l
        const FourVector eta = sample_past_timelike(rng, l * (1.0 + 1e-6), 3.0 * l, 1.0);
        pts[j] = ComplexFourVector(sample_box(rng, 3.0), pts[j - 1].im - eta);
      }
      Sample worst;
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const ComplexFourVector d = pts[a] - pts[b];
          const PropagatorValue v = delta_plus_detailed(d, m, q);
          const double k = b - a;
          const double bound = 1.0 / (4.0 * M_PI * M_PI * l * l * k * k);
          const double margin = relative_margin(std::abs(v.value), bound, v.error_estimate);
          if (margin < worst.margin) {
            worst = {margin, "z_i - z_j = " + describe(d) + fmt(", j - i = %g, |D| = %.17g", k, std::abs(v.value))};
          }
        }
      return worst;
    });
    reduce(r, samples);
  }

  // extended tube bound, x^2 < -l^2 < y^2 with y timelike (either cone) or spacelike
  {
    CheckReport& r = reports[2];
    r.check_name = "extended_tube_bound";
    r.tolerance = tol;
    auto samples = run_samples(sample_count, [&](int i) {
      Rng rng(seed ^ 0xE7E7ULL, i);
      const double x0 = rng.uniform(-1.5, 1.5);
      const auto dir = random_direction(rng);
      const double rad = std::sqrt(x0 * x0 + l * l + rng.uniform(0.05, 9.0));
      const FourVector x(x0, rad * dir[0], rad * dir[1], rad * dir[2]);
      FourVector y;
      for (;;) {
        y = sample_box(rng, 1.2);
        const double y2 = minkowski_square(y);
        if (y2 > -l * l + 1e-3 && std::abs(y2) > 1e-3) break;
      }
      const ComplexFourVector z(x, y);
      const PropagatorValue v = delta_plus_extended_detailed(z, m, l, q);
      const double bound = extended_tube_bound(z);
      return Sample{relative_margin(std::abs(v.value), bound, v.error_estimate),
                    "z = " + describe(z) + fmt(", |D| = %.17g, bound = %.17g", std::abs(v.value), bound)};
    });
    reduce(r, samples);
  }
  return reports;
}

Theorem1Certificate certify_theorem1(int n, double g, double l) {
  const double q = contraction_ratio(n, g, l);
  return {q, q < 1.0};
}

CheckReport check_hermiticity(double g, Mass m, int sample_count, std::uint64_t seed, int cutoff,
                              const QuadratureSpec& q) {
  if (!(g > 0.0) || sample_count < 1) throw DomainError("check_hermiticity: need g > 0 and samples");
  CheckReport r;
  r.check_name = "hermiticity";
  r.tolerance = 1e-10;
  const auto coeffs = exp_phi2_coefficients(g, cutoff);
  const double l_min = 1.25 * std::sqrt(g) / M_PI;  // q <= 0.64
  auto samples = run_samples(sample_count, [&](int i) {
    Rng rng(seed, i);
    const FourVector y = sample_past_timelike(rng, l_min, 3.0 * l_min, 1.0);
    const ComplexFourVector zeta(sample_box(rng, 2.0), y);
    const ComplexFourVector mirrored = -zeta.conj();
    Sample s;
    if (m.massless()) {
      const cplx a = two_point_closed_form(minkowski_square(mirrored), g);
      const cplx b = std::conj(two_point_closed_form(minkowski_square(zeta), g));
      s.margin = -std::abs(a - b);
    }
    double t1 = 0.0, t2 = 0.0;
    const cplx a = series_two_point(mirrored, coeffs, cutoff, m, q, &t1);
    const cplx b = std::conj(series_two_point(zeta, coeffs, cutoff, m, q, &t2));
    s.margin = std::min(s.margin, 1e-12 * std::max(1.0, std::abs(a)) - std::abs(a - b));
    s.detail = "zeta = " + describe(zeta) + fmt(", |W(-conj zeta) - conj W(zeta)| = %.3g", std::abs(a - b));
    return s;
  });
  reduce(r, samples);
  return r;
}

std::vector<FourVector> sample_spatial_points(int count, std::uint64_t seed, double scale) {
  std::vector<FourVector> out;
  for (int i = 0; i < count; ++i) {
    Rng rng(seed, i);
    FourVector v = sample_box(rng, scale);
    v[0] = 0.0;
    out.push_back(v);
  }
  return out;
}

CheckReport check_gram_positivity(double g, Mass m, std::span<const FourVector> points, double T, int cutoff,
                                  const QuadratureSpec& q) {
  if (points.empty()) throw DomainError("check_gram_positivity: need at least one point");
  if (!(T > 0.0) || contraction_ratio(2, g, 2.0 * T) >= 1.0) {
    throw DomainError("check_gram_positivity: 2T is below the certificate length for this g");
  }
  const auto coeffs = exp_phi2_coefficients(g, cutoff);
  const int K = static_cast<int>(points.size());
  Eigen::MatrixXcd M(K, K);
  double max_tail = 0.0;
  for (int a = 0; a < K; ++a)
    for (int b = 0; b < K; ++b) {
      const ComplexFourVector za(points[a], FourVector(T, 0, 0, 0));
      const ComplexFourVector zb(points[b], FourVector(T, 0, 0, 0));
      const ComplexFourVector pts[2] = {za.conj(), zb};
      const SeriesValue s = wightman_series(pts, coeffs, cutoff, m, q);
      M(a, b) = s.value;
      max_tail = std::max(max_tail, s.tail_bound);
    }
  const double defect = (M - M.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::MatrixXcd H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double min_eig = ev.minCoeff();
  const double norm = ev.cwiseAbs().maxCoeff();

  CheckReport r;
  r.check_name = "gram_positivity";
  r.samples = K;
  r.tolerance = 0.0;
  r.worst_margin = std::min(1e-10 - defect, min_eig / norm + 1e-8);
  r.passed = r.worst_margin >= -r.tolerance;
  r.metrics = {{"hermiticity_defect", defect},
               {"min_eigenvalue", min_eig},
               {"spectral_norm", norm},
               {"series_tail_bound", max_tail}};
  r.details.push_back(fmt("min eigenvalue %.17g, spectral norm %.17g, Hermiticity defect %.3g", min_eig, norm, defect));
  return r;
}

CheckReport check_lorentz_invariance(double g, Mass m, int sample_count, std::uint64_t seed, const QuadratureSpec& q) {
  if (!(g > 0.0) || sample_count < 1) throw DomainError("check_lorentz_invariance: need g > 0 and samples");
  CheckReport r;
  r.check_name = "lorentz_invariance";
  r.tolerance = 0.0;
  auto samples = run_samples(sample_count, [&](int i) {
    Rng rng(seed, i);
    const int n = 2 + i % 2;
    const int cutoff = default_cutoff(n);
    const auto coeffs = exp_phi2_coefficients(g, cutoff);
    double s = 0.0;
    for (int k = 1; k < n; ++k) s += 1.0 / (static_cast<double>(k) * k);
    const double l = std::sqrt(g * s / (0.5 * M_PI * M_PI));  // q = 1/2
    std::vector<ComplexFourVector> pts(n);
    pts[0] = ComplexFourVector(sample_box(rng, 2.0), FourVector{});
    for (int j = 1; j < n; ++j) {
      pts[j] = ComplexFourVector(sample_box(rng, 2.0), pts[j - 1].im - sample_past_timelike(rng, l, 2.0 * l, 0.8));
    }
    const LorentzTransform B = sample_lorentz(rng, 0.5);
    std::vector<ComplexFourVector> moved(n);
    for (int j = 0; j < n; ++j) moved[j] = B * pts[j];
    const SeriesValue a = wightman_series(pts, coeffs, cutoff, m, q);
    const SeriesValue b = wightman_series(moved, coeffs, cutoff, m, q);
    const double scale = std::max(1.0, std::abs(a.value));
    const double allowance =
        scale * (1e-10 + 10.0 * cutoff * (a.propagator_rel_error + b.propagator_rel_error));
    const double diff = std::abs(a.value - b.value);
    return Sample{(allowance - diff) / scale, fmt("n = %g, |W(Bz) - W(z)| = %.3g, allowance %.3g", n, diff, allowance)};
  });
  reduce(r, samples);
  return r;
}

std::vector<double> geometric_grid(double a, double b, int count) {
  if (!(a > 0.0) || !(b > a) || count < 2) throw DomainError("geometric_grid: need 0 < a < b and count >= 2");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = a * std::pow(b / a, static_cast<double>(i) / (count - 1));
  out.back() = b;
  return out;
}

std::vector<ComplexFourVector> cluster_base_configuration(double g, int n) {
  double s = 0.0;
  for (int k = 1; k < n; ++k) s += 1.0 / (static_cast<double>(k) * k);
  const double l = std::sqrt(g * s / (0.25 * M_PI * M_PI));
  std::vector<ComplexFourVector> pts(n);
  for (int j = 0; j < n; ++j) pts[j] = ComplexFourVector(FourVector{}, FourVector(j * l, 0, 0, 0));
  return pts;
}

std::vector<double> cluster_scan(double g, Mass m, const FourVector& a, std::span<const double> lambda_grid, int n,
                                 int k, int cutoff, const QuadratureSpec& q) {
  if (!is_spacelike(a)) throw DomainError("cluster_scan: translation direction must be spacelike");
  if (n < 2 || k < 1 || k >= n) throw DomainError("cluster_scan: need n >= 2 and 1 <= k < n");
  if (cutoff < 0) cutoff = default_cutoff(n);
  const auto coeffs = exp_phi2_coefficients(g, cutoff);
  const auto base = cluster_base_configuration(g, n);
  std::vector<double> D(lambda_grid.size());
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    auto pts = base;
    for (int j = k; j < n; ++j) pts[j].re += lambda_grid[i] * a;
    D[i] = std::abs(connected_series(pts, k, coeffs, cutoff, m, q).value);
  }
  return D;
}

double cluster_slope(std::span<const double> lambda_grid, std::span<const double> D) {
  if (lambda_grid.size() != D.size() || lambda_grid.empty()) throw DomainError("cluster_slope: size mismatch");
  const double lmax = *std::max_element(lambda_grid.begin(), lambda_grid.end());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (lambda_grid[i] < lmax / 10.0 * (1.0 - 1e-12) || !(D[i] > 0.0)) continue;
    const double x = std::log(lambda_grid[i]);
    const double y = std::log(D[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 3) throw DomainError("cluster_slope: fewer than three usable points in the largest decade");
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

CheckReport check_cluster_decay(double g, Mass m, const FourVector& a, std::span<const double> lambda_grid, int n,
                                int k, int cutoff, const QuadratureSpec& q) {
  if (lambda_grid.size() < 3) throw DomainError("check_cluster_decay: need at least three grid points");
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] > 0.0) || (i > 0 && !(lambda_grid[i] > lambda_grid[i - 1]))) {
      throw DomainError("check_cluster_decay: grid must be positive and increasing");
    }
  }
  const auto D = cluster_scan(g, m, a, lambda_grid, n, k, cutoff, q);
  std::vector<double> fine;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (i > 0) fine.push_back(std::sqrt(lambda_grid[i - 1] * lambda_grid[i]));
    fine.push_back(lambda_grid[i]);
  }
  const auto Dfine = cluster_scan(g, m, a, fine, n, k, cutoff, q);
  const double slope = cluster_slope(lambda_grid, D);
  const double slope_fine = cluster_slope(fine, Dfine);
  const double change = std::abs(slope - slope_fine);

  CheckReport r;
  r.check_name = "cluster_decay";
  r.samples = lambda_grid.size() + fine.size();
  r.tolerance = 0.0;
  r.worst_margin = std::min(-1.8 - slope, 0.05 - change);
  r.passed = r.worst_margin >= -r.tolerance;
  r.metrics = {{"slope", slope}, {"slope_refined", slope_fine}, {"slope_change", change}};
  r.details.push_back(fmt("fitted slope %.6f, refined %.6f", slope, slope_fine));
  return r;
}

CheckReport jost_symmetry_check(double g, Mass m, std::span<const FourVector> xi, int k,
                                std::span<const double> epsilons, int cutoff, const QuadratureSpec& q) {
  const int n = static_cast<int>(xi.size()) + 1;
  if (n < 2) throw DomainError("jost_symmetry_check: need at least one difference vector");
  if (k < 1 || k >= n) throw DomainError("jost_symmetry_check: k must satisfy 1 <= k < n");
  if (!jost_spacelike_config(xi)) throw DomainError("jost_symmetry_check: configuration is not a Jost configuration");
  if (epsilons.size() < 3) throw DomainError("jost_symmetry_check: need three epsilon values");
  for (std::size_t i = 1; i < epsilons.size(); ++i) {
    if (!(epsilons[i] < epsilons[i - 1]) || !(epsilons[i] > 0.0)) {
      throw DomainError("jost_symmetry_check: epsilons must be positive and decreasing");
    }
  }
  if (cutoff < 0) cutoff = default_cutoff(n);
  const auto coeffs = exp_phi2_coefficients(g, cutoff);

  auto config = [&](double eps, double sign_k) {
    std::vector<ComplexFourVector> d(n - 1);
    for (int j = 0; j < n - 1; ++j) {
      const double t = (j == k - 1) ? sign_k * eps : -2.0 * eps;
      d[j] = ComplexFourVector(xi[j], FourVector(t, 0, 0, 0));
    }
    return from_difference_coords(ComplexFourVector{}, d);
  };

  CheckReport r;
  r.check_name = "jost_symmetry";
  r.tolerance = 0.0;
  std::vector<cplx> D;
  double worst_local_q = 0.0;
  for (double eps : epsilons) {
    const auto minus = config(eps, -1.0);
    const auto plus = config(eps, +1.0);
    const SeriesValue a = wightman_series(minus, coeffs, cutoff, m, q);
    const SeriesValue b = transposed_series(plus, k, coeffs, cutoff, m, q);
    D.push_back(a.value - b.value);
    worst_local_q = std::max({worst_local_q, a.local_ratio_q, b.local_ratio_q});
    r.metrics.push_back({fmt("difference_at_eps_%.3g", eps), std::abs(D.back())});
  }
  // first-order Richardson on consecutive pairs
  std::vector<cplx> R;
  for (std::size_t i = 0; i + 1 < D.size(); ++i) {
    const double rho = epsilons[i] / epsilons[i + 1];
    R.push_back((rho * D[i + 1] - D[i]) / (rho - 1.0));
  }
  const double extrapolated = std::abs(R.back());
  const double spread = R.size() > 1 ? std::abs(R.back() - R[R.size() - 2]) : 0.0;
  r.samples = 2 * epsilons.size();
  r.worst_margin = 1e-6 - extrapolated;
  r.passed = r.worst_margin >= -r.tolerance;
  r.metrics.push_back({"extrapolated_difference", extrapolated});
  r.metrics.push_back({"extrapolation_spread", spread});
  r.metrics.push_back({"local_ratio_q", worst_local_q});
  r.details.push_back(fmt("extrapolated |original - transposed| = %.3g (spread %.3g)", extrapolated, spread));
  return r;
}

CheckReport check_coordinate_transform(int n_min, int n_max, int draws, std::uint64_t seed) {
  if (n_min < 2 || n_max < n_min || draws < 1) throw DomainError("check_coordinate_transform: invalid ranges");
  CheckReport r;
  r.check_name = "coordinate_transform";
  r.tolerance = 0.0;
  std::vector<Sample> samples;
  double worst_roundtrip = 0.0;
  for (int n = n_min; n <= n_max; ++n) {
    for (int i = 0; i < draws; ++i) {
      Rng rng(seed + 7919 * n, i);
      std::vector<ComplexFourVector> pts(n);
      for (auto& p : pts) p = ComplexFourVector(sample_box(rng, 5.0), sample_box(rng, 5.0));
      const DifferenceCoords dc = to_difference_coords(pts);
      const auto back = from_difference_coords(dc.center, dc.diffs);
      double rt = 0.0;
      for (int j = 0; j < n; ++j) rt = std::max(rt, max_norm(back[j] - pts[j]) / 5.0);
      worst_roundtrip = std::max(worst_roundtrip, rt);

      // imaginary spread with |eta_j| < l
      const double l = rng.uniform(0.1, 2.0);
      std::vector<ComplexFourVector> d(n - 1);
      for (auto& v : d) {
        FourVector eta;
        for (std::size_t mu = 0; mu < 4; ++mu) eta[mu] = l * rng.uniform(-1.0, 1.0);
        v = ComplexFourVector(sample_box(rng, 3.0), eta);
      }
      const auto x = from_difference_coords(ComplexFourVector{}, d);
      Sample s{1e-12 - rt, fmt("n = %g, round trip error %.3g", n, rt)};
      for (int j = 1; j <= n; ++j) {
        const double bj = l / n * (0.5 * (j - 1) * j + 0.5 * (n - j) * (n - j + 1));
        const double bound = std::min(bj, l * (n - 1) / 2.0);
        const double margin = (bound - max_norm(x[j - 1].im)) / l;
        if (margin < s.margin) s = {margin, fmt("n = %g, j = %g, |y_j| = %.6g, bound %.6g", n, j, max_norm(x[j - 1].im), bound)};
      }
      samples.push_back(s);
    }
  }
  reduce(r, samples);
  r.metrics.push_back({"roundtrip_error", worst_roundtrip});
  return r;
}

CheckReport check_pullback_norm_inequality(const AnalyticTestFunction& f, int n, std::span<const double> l_grid,
                                           std::span<const int> N_grid, const StripNormOptions& opts) {
  const TestFunction ft = pullback_ft(f, n);
  const double X_integral = polynomial_weight_integral(4, 5.0);
  CheckReport r;
  r.check_name = "pullback_norm_inequality";
  r.tolerance = 0.0;
  std::vector<Sample> samples;
  for (double l : l_grid)
    for (int N : N_grid) {
      const double lhs = strip_norm(ft, StripNorm{l, N}, opts).value;
      const double rhs = std::pow(2.0, N) * X_integral * strip_norm(f, StripNorm{l * (n - 1) / 2.0, N + 5}, opts).value;
      samples.push_back({(rhs - lhs) / rhs, fmt("l = %g, N = %g: lhs %.6g, rhs %.6g", l, N, lhs, rhs)});
    }
  reduce(r, samples);
  return r;
}

CheckReport check_mollifier_demo(std::span<const int> nus, double l, int N, const MollifierSpec& spec) {
  if (nus.size() < 2) throw DomainError("check_mollifier_demo: need at least two values of nu");
  const auto f = AnalyticTestFunction::gaussian(1);
  const TestFunction ff = f.as_function();
  const double fnorm = strip_norm(f, StripNorm{l, N}).value;
  const double CN = mollifier_moment(N, 1, spec);

  CheckReport r;
  r.check_name = "mollifier_demo";
  r.tolerance = 0.0;
  std::vector<double> err;
  double worst_mass = 0.0;
  double estimate_margin = kInf;
  for (int nu : nus) {
    const TestFunction fnu = mollify(f, nu, spec);
    err.push_back(strip_norm(fnu - ff, StripNorm{l, N}).value);
    worst_mass = std::max(worst_mass, std::abs(mollifier_mass(nu, spec) - 1.0));
    if (std::isfinite(CN)) {
      const double nnorm = strip_norm(fnu, StripNorm{l, N}).value;
      estimate_margin = std::min(estimate_margin, (CN * fnorm - nnorm) / fnorm);
    }
    r.metrics.push_back({"error_nu_" + std::to_string(nu), err.back()});
  }
  double decrease = kInf;
  for (std::size_t i = 0; i + 1 < err.size(); ++i) decrease = std::min(decrease, (err[i] - err[i + 1]) / err[0]);
  const double ratio = err.back() / err.front();
  r.samples = nus.size();
  r.metrics.push_back({"final_to_initial_ratio", ratio});
  r.metrics.push_back({"worst_mass_deviation", worst_mass});
  r.metrics.push_back({"moment_C_N", CN});

  const std::pair<double, std::string> parts[] = {
      {decrease, fmt("smallest relative decrease %.6g", decrease)},
      {0.05 - ratio, fmt("final/initial error ratio %.6g (required < 0.05)", ratio)},
      {1e-8 - worst_mass, fmt("worst kernel mass deviation %.3g", worst_mass)},
      {estimate_margin, fmt("margin of ||f_nu|| <= C_N ||f||: %.6g", estimate_margin)}};
  r.worst_margin = kInf;
  for (const auto& [margin, text] : parts) {
    r.worst_margin = std::min(r.worst_margin, margin);
    if (margin < 0.0) r.details.push_back("violated: " + text);
  }
  for (const auto& [margin, text] : parts)
    if (margin >= 0.0) r.details.push_back(text);
  r.passed = r.worst_margin >= -r.tolerance;
  return r;
}

}  // namespace wfl
