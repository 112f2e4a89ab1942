#include <cmath>

#include "doctest.h"
#include "wfl/axioms.hpp"
#include "wfl/errors.hpp"

using namespace wfl;

TEST_CASE("propagator bounds on a small sample") {
  const auto massless = check_propagator_bounds(Mass{}, 0.4, 400, 3);
  REQUIRE(massless.size() == 3);
  for (const auto& r : massless) CHECK(r.passed);
  CHECK(massless[0].check_name == "tube_bound");
  CHECK(massless[0].metric("axis_saturation_defect") < 1e-12);
  CHECK(std::abs(massless[0].worst_margin) < 1e-12);

  const auto massive = check_propagator_bounds(Mass(1.0), 0.4, 100, 3);
  for (const auto& r : massive) {
    CHECK(r.passed);
    CHECK(r.worst_margin > 0.0);
  }
}

TEST_CASE("extended tube bound margin at a fixed point") {
  const ComplexFourVector z({0, -2, 0, 0}, {0.5, 0, 0, 0});
  const double margin = extended_tube_bound(z) - std::abs(delta_plus_extended(z, Mass{}, 0.4));
  CHECK(margin == doctest::Approx(1 / (2 * M_PI * M_PI * 4.25) - 1 / (4 * M_PI * M_PI * 4.25)));
}

TEST_CASE("convergence certificate") {
  for (int n = 2; n <= 8; ++n) {
    const auto c = certify_theorem1(n, 6.0, 1.01);
    CHECK(c.certified);
    CHECK(c.q < 1.0 / 1.0201);
  }
  const double threshold = std::sqrt(6.0) / M_PI;
  CHECK(threshold == doctest::Approx(0.7797).epsilon(1e-4));
  CHECK(certify_theorem1(2, 6.0, threshold * 1.001).certified);
  CHECK_FALSE(certify_theorem1(2, 6.0, threshold * 0.999).certified);
  CHECK_FALSE(certify_theorem1(3, 6.0, threshold * 1.001).certified);
  double previous = 1e300;
  for (double l : {0.5, 0.8, 1.0, 2.0, 10.0, 1e3}) {
    const auto c = certify_theorem1(4, 6.0, l);
    CHECK(c.q < previous);
    previous = c.q;
    if (certify_theorem1(4, 6.0, l).certified) CHECK(certify_theorem1(4, 6.0, 1.5 * l).certified);
  }
  CHECK(previous < 1e-5);
}

TEST_CASE("hermiticity") {
  const auto r = check_hermiticity(6.0, Mass{}, 100, 5);
  CHECK(r.passed);
  const auto m = check_hermiticity(6.0, Mass(1.0), 20, 5);
  CHECK(m.passed);
}

TEST_CASE("Gram matrices") {
  const std::vector<FourVector> one = {FourVector(0, 0.3, 0, 0)};
  const auto a = check_gram_positivity(6.0, Mass{}, one, 1.2);
  CHECK(a.passed);
  CHECK(a.metric("min_eigenvalue") > 0.0);
  const double expect = std::real(two_point_closed_form(-4 * 1.44, 6.0));
  CHECK(a.metric("min_eigenvalue") == doctest::Approx(expect).epsilon(1e-10));

  const std::vector<FourVector> twice = {FourVector(0, 0.3, 0.1, 0), FourVector(0, 0.3, 0.1, 0)};
  const auto b = check_gram_positivity(6.0, Mass{}, twice, 1.2);
  CHECK(b.passed);
  CHECK(std::abs(b.metric("min_eigenvalue")) < 1e-10);

  const auto pts = sample_spatial_points(6, 11);
  const auto c = check_gram_positivity(6.0, Mass{}, pts, 1.2);
  CHECK(c.passed);
  CHECK(c.metric("hermiticity_defect") < 1e-10);
  CHECK(c.metric("min_eigenvalue") >= -1e-8 * c.metric("spectral_norm"));

  CHECK_THROWS_AS(check_gram_positivity(6.0, Mass{}, pts, 0.3), DomainError);
}

TEST_CASE("Lorentz invariance") {
  CHECK(check_lorentz_invariance(6.0, Mass{}, 50, 2).passed);
  CHECK(check_lorentz_invariance(6.0, Mass(1.0), 10, 2).passed);
}

TEST_CASE("cluster decay") {
  const std::vector<double> lam = {160.0, 320.0};
  const auto D = cluster_scan(6.0, Mass{}, FourVector(0, 1, 0, 0), lam, 2, 1);
  CHECK(D[0] / D[1] == doctest::Approx(16.0).epsilon(0.01));

  const auto grid = geometric_grid(10, 320, 16);
  CHECK(grid.front() == 10.0);
  CHECK(grid.back() == 320.0);
  const auto r = check_cluster_decay(6.0, Mass{}, FourVector(0, 1, 0, 0), grid, 2, 1);
  CHECK(r.passed);
  CHECK(r.metric("slope") == doctest::Approx(-4.0).epsilon(0.01));

  std::vector<double> power(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) power[i] = 7.0 * std::pow(grid[i], -2.5);
  CHECK(cluster_slope(grid, power) == doctest::Approx(-2.5).epsilon(1e-12));

  const auto base = cluster_base_configuration(6.0, 3);
  CHECK(contraction_ratio(3, 6.0, certificate_length(base)) == doctest::Approx(0.25));
  CHECK_THROWS_AS(cluster_scan(6.0, Mass{}, FourVector(1, 0, 0, 0), lam, 2, 1), DomainError);
}

TEST_CASE("Jost symmetry") {
  const double eps[3] = {1e-2, 5e-3, 2.5e-3};
  const FourVector two[1] = {FourVector(0, 3, 0, 0)};
  const auto a = jost_symmetry_check(6.0, Mass{}, two, 1, eps);
  CHECK(a.passed);
  for (const auto& [k, v] : a.metrics)
    if (k.rfind("difference_at_eps", 0) == 0) CHECK(v < 1e-14);

  const FourVector three[2] = {FourVector(0, 5, 0, 0), FourVector(0, 5, 0, 0)};
  const auto b = jost_symmetry_check(6.0, Mass{}, three, 1, eps);
  CHECK(b.passed);
  CHECK(b.metric("extrapolated_difference") < 1e-6);

  const FourVector timelike[2] = {FourVector(2, 0, 0, 0), FourVector(0, 5, 0, 0)};
  CHECK_THROWS_AS(jost_symmetry_check(6.0, Mass{}, timelike, 1, eps), DomainError);
}

TEST_CASE("original and transposed series differ at timelike separation") {
  // massive commutator does not vanish inside the light cone
  const auto coeffs = exp_phi2_coefficients(1.0, 10);
  const FourVector xi(2.0, 0.5, 0, 0);
  std::vector<double> diffs;
  for (double eps : {0.2, 0.1}) {
    const ComplexFourVector minus[2] = {ComplexFourVector(xi, FourVector(-eps, 0, 0, 0)), ComplexFourVector{}};
    const ComplexFourVector plus[2] = {ComplexFourVector(xi, FourVector(eps, 0, 0, 0)), ComplexFourVector{}};
    const cplx o = wightman_series(minus, coeffs, 10, Mass(1.0)).value;
    const cplx t = transposed_series(plus, 1, coeffs, 10, Mass(1.0)).value;
    diffs.push_back(std::abs(o - t));
  }
  CHECK(diffs[0] > 1e-4);
  CHECK(diffs[1] > 0.5 * diffs[0]);
}

TEST_CASE("coordinate transform") {
  const auto r = check_coordinate_transform(2, 6, 200, 4);
  CHECK(r.passed);
  CHECK(r.metric("roundtrip_error") < 1e-12);
  CHECK(r.samples == 5 * 200);
}

TEST_CASE("pullback norm inequality on a small grid") {
  const double ls[3] = {0.1, 0.5, 1.0};
  const int Ns[3] = {0, 3, 7};
  const auto r = check_pullback_norm_inequality(AnalyticTestFunction::gaussian(8), 2, ls, Ns);
  CHECK(r.passed);
  CHECK(r.samples == 9);
}

TEST_CASE("mollifier demo report") {
  const int nus[4] = {1, 2, 4, 8};
  const auto r = check_mollifier_demo(nus, 0.3, 0);
  double previous = 1e300;
  for (int nu : nus) {
    const double e = r.metric("error_nu_" + std::to_string(nu));
    CHECK(e < previous);
    previous = e;
  }
  CHECK(r.metric("worst_mass_deviation") < 1e-8);
  // direct convolution sums on the strip
  CHECK(r.metric("error_nu_1") == doctest::Approx(0.41803).epsilon(1e-3));
  CHECK(r.metric("error_nu_8") == doctest::Approx(0.013978).epsilon(1e-3));
  CHECK(r.metric("final_to_initial_ratio") < 0.05);
  CHECK(r.passed);

  MollifierSpec unit;
  unit.scale = 1.0;
  const auto wide = check_mollifier_demo(nus, 0.3, 0, unit);
  CHECK(wide.metric("error_nu_8") == doctest::Approx(0.051305).epsilon(1e-3));
  CHECK(wide.metric("final_to_initial_ratio") > 0.05);
  CHECK_FALSE(wide.passed);
}
