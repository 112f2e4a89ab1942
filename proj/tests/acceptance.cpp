#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "wfl/axioms.hpp"
#include "wfl/errors.hpp"
#include "wfl/pairing.hpp"
#include "wfl/sampling.hpp"
#include "wfl/wick.hpp"

using namespace wfl;

namespace {

struct Outcome {
  bool ok = false;
  std::string summary;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Outcome two_point_closed_form_criterion() {
  const double g = 2 * M_PI * M_PI;
  const auto coeffs = exp_phi2_coefficients(g, 40);
  const auto ysq = geometric_grid(2.5, 25.0, 20);
  bool ok = true;
  double worst = -1e300;
  double deepest_tail = 0.0;
  for (int i = 0; i < 20; ++i) {
    Rng rng(101, i);
    FourVector y = sample_past_timelike(rng, 1.0, 1.0, 1.0);
    y *= std::sqrt(ysq[i]);
    const ComplexFourVector zeta(sample_box(rng, 1.0), y);
    const ComplexFourVector pts[2] = {zeta, ComplexFourVector{}};
    const SeriesValue s = wightman_series(pts, coeffs, 40, Mass{});
    const cplx closed = two_point_closed_form(minkowski_square(zeta), g);
    const double diff = std::abs(s.value - closed);
    ok = ok && s.certified && diff <= s.tail_bound;
    worst = std::max(worst, diff - s.tail_bound);
    if (i == 19) deepest_tail = s.tail_bound;
  }
  ok = ok && deepest_tail <= 1e-8;
  return {ok, fmt("max(|series - closed| - tail) = %.3g, tail at deepest point %.3g", worst, deepest_tail)};
}

Outcome certificate_criterion() {
  const double g = 6.0, l = 1.01;
  bool ok = true;
  double qmax = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const auto c = certify_theorem1(n, g, l);
    ok = ok && c.certified && c.q <= g / (6 * l * l);
    qmax = std::max(qmax, c.q);
  }
  const double threshold = std::sqrt(g) / M_PI;
  const bool region = certify_theorem1(2, g, threshold * (1 + 1e-9)).certified &&
                      !certify_theorem1(2, g, threshold * (1 - 1e-9)).certified && threshold < 1.0;
  return {ok && region, fmt("max q over n = 2..8: %.6f (n-uniform bound %.6f); n = 2 certified for l > %.6f",
                            qmax, g / (6 * l * l), threshold)};
}

Outcome propagator_bounds_criterion() {
  bool ok = true;
  std::string s;
  double saturation = 0.0;
  for (double mu : {0.0, 1.0}) {
    for (const auto& r : check_propagator_bounds(Mass(mu), 0.4, 10000, 2024)) {
      ok = ok && r.passed && r.samples == 10000;
      s += r.check_name + fmt("(mu=%g) worst %.2g; ", mu, r.worst_margin);
      if (mu == 0.0 && r.check_name == "tube_bound") saturation = r.metric("axis_saturation_defect");
    }
  }
  ok = ok && saturation <= 1e-12;
  return {ok, s + fmt("axis saturation defect %.2g", saturation)};
}

Outcome pairing_criterion() {
  const auto f = AnalyticTestFunction::gaussian(4);
  const FourVector e1[1] = {FourVector(-0.3, 0, 0, 0)};
  const FourVector e2[1] = {FourVector(-0.6, 0, 0, 0)};
  bool ok = true;
  std::string s;
  for (int r : {1, 2}) {
    const PairingValue a = pair_monomial(ContractionMatrix(2, {r}), f, e1, Mass{});
    const PairingValue b = pair_monomial(ContractionMatrix(2, {r}), f, e2, Mass{});
    const double diff = std::abs(a.value - b.value);
    const double tol = a.quadrature_error + b.quadrature_error;
    const double rel = tol / std::abs(a.value);
    ok = ok && diff <= tol && rel <= 1e-6;
    s += fmt("r=%g: |diff| %.2g, combined tolerance %.2g (%.2g relative); ", r, diff, tol, rel);
  }
  return {ok, s};
}

Outcome tail_criterion() {
  long double brute = 0.0L;
  for (int m = 100000; m > 10; --m) brute += 0.5L * (m + 1) * (m + 2) * std::pow(0.5L, m);
  const double t = tail_remainder(0.5, 3, 10);
  const double rel = std::abs(t - static_cast<double>(brute)) / static_cast<double>(brute);
  double geo = 0.0;
  for (double q : {0.1, 0.5, 0.9})
    for (int K : {0, 5, 20}) {
      const double exact = std::pow(q, K + 1) / (1 - q);
      geo = std::max(geo, std::abs(tail_remainder(q, 1, K) - exact) / exact);
    }
  return {rel <= 1e-12 && geo <= 4e-16, fmt("E=3 relative deviation %.2g; E=1 relative deviation %.2g", rel, geo)};
}

Outcome cluster_criterion() {
  const auto grid = geometric_grid(10, 320, 16);
  const auto r = check_cluster_decay(6.0, Mass{}, FourVector(0, 1, 0, 0), grid, 2, 1);
  const double slope = r.metric("slope"), change = r.metric("slope_change");
  return {slope <= -2.0 && change < 0.05, fmt("slope %.4f, change under grid halving %.2g", slope, change)};
}

Outcome gram_criterion() {
  const auto pts = sample_spatial_points(6, 11);
  const auto r = check_gram_positivity(6.0, Mass{}, pts, 1.2);
  const double defect = r.metric("hermiticity_defect");
  const double mineig = r.metric("min_eigenvalue");
  const double norm = r.metric("spectral_norm");
  return {defect < 1e-10 && mineig >= -1e-8 * norm,
          fmt("Hermiticity defect %.2g, min eigenvalue %.4g, norm %.4g", defect, mineig, norm)};
}

Outcome jost_criterion() {
  const FourVector xi[2] = {FourVector(0, 5, 0, 0), FourVector(0, 5, 0, 0)};
  const double eps[3] = {1e-2, 5e-3, 2.5e-3};
  const auto r = jost_symmetry_check(6.0, Mass{}, xi, 1, eps);
  const double d = r.metric("extrapolated_difference");
  return {d < 1e-6, fmt("extrapolated |original - transposed| = %.3g", d)};
}

Outcome coordinate_criterion() {
  const auto ct = check_coordinate_transform(2, 6, 1000, 77);
  std::vector<double> ls;
  for (int i = 1; i <= 10; ++i) ls.push_back(0.1 * i);
  std::vector<int> Ns;
  for (int N = 0; N < 10; ++N) Ns.push_back(N);
  const auto p1 = check_pullback_norm_inequality(AnalyticTestFunction::gaussian(8), 2, ls, Ns);
  std::vector<double> width(8, 0.8), center(8, 0.0);
  center[1] = 0.5;
  center[6] = -0.3;
  const auto p2 = check_pullback_norm_inequality(
      AnalyticTestFunction::gaussian_monomial(width, center, std::vector<int>(8, 0)), 2, ls, Ns);
  const double rt = ct.metric("roundtrip_error");
  const bool ok = ct.passed && rt < 1e-12 && ct.samples == 5000 && p1.passed && p2.passed && p1.samples == 100 &&
                  p2.samples == 100;
  return {ok, fmt("round trip %.2g, spread margin %.3g over 5 x 1000 draws, norm inequality margins %.3g / %.3g", rt,
                  ct.worst_margin, p1.worst_margin, p2.worst_margin)};
}

Outcome mollifier_criterion() {
  const int nus[4] = {1, 2, 4, 8};
  const auto r = check_mollifier_demo(nus, 0.3, 0);
  std::vector<double> e;
  for (int nu : nus) e.push_back(r.metric("error_nu_" + std::to_string(nu)));
  bool decreasing = true;
  for (std::size_t i = 1; i < e.size(); ++i) decreasing = decreasing && e[i] < e[i - 1];
  const double ratio = e.back() / e.front();
  const double mass = r.metric("worst_mass_deviation");
  return {decreasing && ratio < 0.05 && mass <= 1e-8,
          fmt("errors %.4f > %.4f > %.4f > %.4f", e[0], e[1], e[2], e[3]) +
              fmt(", final/initial %.4f (required < 0.05), mass deviation %.2g", ratio, mass)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "two-point closed form", 5, two_point_closed_form_criterion},
      {2, "convergence certificate", 1, certificate_criterion},
      {3, "propagator bounds", 30, propagator_bounds_criterion},
      {4, "pairing eta-independence", 60, pairing_criterion},
      {5, "tail oracle", 1e9, tail_criterion},
      {6, "cluster decay", 10, cluster_criterion},
      {7, "Gram positivity", 10, gram_criterion},
      {8, "Jost symmetry", 60, jost_criterion},
      {9, "coordinate transform", 1e9, coordinate_criterion},
      {10, "mollifier demo", 1e9, mollifier_criterion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = t <= c.limit_seconds;
    const bool ok = o.ok && in_time;
    if (!ok) ++failed;
    std::printf("%s  %2d %-26s %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", c.id, c.name, o.summary.c_str(), t,
                in_time ? "" : ", over the time limit");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
