#include <cmath>
#include <set>

#include "doctest.h"
#include "wfl/errors.hpp"
#include "wfl/wick.hpp"

using namespace wfl;

namespace {

std::vector<ComplexFourVector> tube_points(const std::vector<FourVector>& re, const std::vector<double>& im_time) {
  std::vector<ComplexFourVector> p;
  for (std::size_t j = 0; j < re.size(); ++j) p.emplace_back(re[j], FourVector(im_time[j], 0, 0, 0));
  return p;
}

double d_exact(double g, int r) {
  if (r % 2) return 0.0;
  return std::pow(g, r / 2) * std::tgamma(r + 1.0) / std::tgamma(r / 2 + 1.0);
}

double fact(int r) { return std::tgamma(r + 1.0); }

cplx w(const ComplexFourVector& z) { return -1.0 / (4 * M_PI * M_PI * minkowski_square(z)); }

}  // namespace

TEST_CASE("exp phi^2 coefficients") {
  const double g = 1.7;
  const auto c = exp_phi2_coefficients(g, 8);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == 0.0);
  CHECK(c[2] == doctest::Approx(2 * g));
  CHECK(c[4] == doctest::Approx(12 * g * g));
  CHECK(c[4] * c[4] <= std::pow(2 * g, 4) * 24);
  for (int r = 0; r <= 8; ++r) {
    CHECK(c[r] == doctest::Approx(d_exact(g, r)));
    CHECK(c[r] * c[r] <= std::pow(2 * g, r) * fact(r) * (1 + 1e-12));
  }
  CHECK_THROWS_AS(CoefficientSequence({1.0, 0.0, 10.0}, 1.0, 1.0), DomainError);
}

TEST_CASE("big D") {
  const auto c = exp_phi2_coefficients(2.0, 6);
  CHECK(big_D(c, ContractionMatrix(3)) == 1.0);
  CHECK(big_D(c, ContractionMatrix(2, {2})) == doctest::Approx(16.0));
  CHECK(big_D(c, ContractionMatrix(3, {1, 0, 0})) == 0.0);
  CHECK(big_D(c, ContractionMatrix(3, {1, 1, 1})) == doctest::Approx(64.0));
}

TEST_CASE("contraction enumeration") {
  CHECK(enumerate_contractions(2, 3).size() == 1);
  CHECK(enumerate_contractions(3, 2).size() == 6);
  CHECK(enumerate_contractions(3, 0).size() == 1);
  for (int n = 2; n <= 5; ++n)
    for (int deg = 0; deg <= 5; ++deg) {
      const auto all = enumerate_contractions(n, deg);
      CHECK(static_cast<double>(all.size()) == contraction_count(n, deg));
      std::set<std::vector<int>> seen;
      for (const auto& R : all) {
        CHECK(R.degree() == deg);
        seen.insert(R.upper());
      }
      CHECK(seen.size() == all.size());
      for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].upper() < all[i].upper());
    }
  const ContractionMatrix R(3, {2, 0, 3});
  CHECK(R.at(0, 1) == 2);
  CHECK(R.at(2, 1) == 3);
  CHECK(R.column_sums() == std::vector<int>{2, 5, 3});
  CHECK(R.factorial() == 12.0);
}

TEST_CASE("monomial") {
  const auto pts = tube_points({{}, {}}, {-1.0, 0.0});
  CHECK(monomial(pts, ContractionMatrix(2), Mass{}) == cplx(1.0));
  CHECK(std::abs(monomial(pts, ContractionMatrix(2, {1}), Mass{}) - 1.0 / (4 * M_PI * M_PI)) < 1e-17);
  CHECK(std::abs(monomial(pts, ContractionMatrix(2, {2}), Mass{}) - 1.0 / (16 * std::pow(M_PI, 4))) < 1e-18);
}

TEST_CASE("two-point series") {
  const double g = 2 * M_PI * M_PI;
  const auto pts = tube_points({{}, {}}, {-2.0, 0.0});
  const auto c = exp_phi2_coefficients(g, 40);
  CHECK(wightman_series(pts, c, 0, Mass{}).value == cplx(1.0));
  const SeriesValue s = wightman_series(pts, c, 40, Mass{});
  const cplx closed = two_point_closed_form(-4.0, g);
  CHECK(std::abs(closed - 4.0 / std::sqrt(15.0)) < 1e-15);
  CHECK(s.certified);
  CHECK(std::abs(s.value - closed) <= s.tail_bound);
  CHECK(s.tail_bound < 1e-8);
  CHECK(std::abs(s.value - 1.0327956) < 1e-7);

  // against the explicit one-variable sum
  const cplx wv = 1.0 / (16 * M_PI * M_PI);
  cplx horner = 0.0;
  for (int r = 40; r >= 0; --r) horner = horner * wv + d_exact(g, r) * d_exact(g, r) / fact(r);
  CHECK(std::abs(s.value - horner) < 1e-14);
}

TEST_CASE("closed form values") {
  const double g = 2 * M_PI * M_PI;
  CHECK(std::abs(two_point_closed_form(-100.0, g) - 1.0 / std::sqrt(1 - 1e-4)) < 1e-15);
  CHECK(std::abs(two_point_closed_form(cplx(-1e12, 0), g) - 1.0) < 1e-15);
  CHECK(std::abs(two_point_closed_form(-100.0, g) - 1.0000500) < 1e-7);
  CHECK_THROWS_AS(two_point_closed_form(cplx(1.0, 0.0), g), SingularityError);
  // real Taylor coefficients in zeta^2
  const cplx s(-3.0, 0.7);
  CHECK(std::abs(two_point_closed_form(std::conj(s), 6.0) - std::conj(two_point_closed_form(s, 6.0))) < 1e-15);
}

TEST_CASE("generating identity") {
  const auto a = generating_identity_check(0.0, 10);
  CHECK(a.partial_sum == cplx(1.0));
  CHECK(a.closed_form == cplx(1.0));
  const auto b = generating_identity_check(0.1, 60);
  CHECK(std::abs(b.partial_sum - b.closed_form) < 1e-12);
  CHECK(std::abs(b.closed_form - 1.2909944) < 1e-7);
  const auto c = generating_identity_check(-0.2, 160);
  CHECK(std::abs(c.closed_form - 0.7453560) < 1e-7);
  CHECK(std::abs(c.partial_sum - c.closed_form) < 1e-12);
}

TEST_CASE("three-point series against nested sums") {
  const double g = 3.0;
  const int K = 12;
  const auto pts = tube_points({{0.1, 0.3, 0, 0}, {0, -0.2, 0.4, 0}, {0.2, 0, 0, 0.5}}, {-3.0, -1.5, 0.0});
  const auto c = exp_phi2_coefficients(g, K);
  const SeriesValue s = wightman_series(pts, c, K, Mass{});
  const cplx w12 = w(pts[0] - pts[1]), w13 = w(pts[0] - pts[2]), w23 = w(pts[1] - pts[2]);
  cplx direct = 0.0;
  for (int a = 0; a <= K; ++a)
    for (int b = 0; a + b <= K; ++b)
      for (int e = 0; a + b + e <= K; ++e) {
        const double D = d_exact(g, a + b) * d_exact(g, a + e) * d_exact(g, b + e);
        direct += D / (fact(a) * fact(b) * fact(e)) * std::pow(w12, a) * std::pow(w13, b) * std::pow(w23, e);
      }
  CHECK(std::abs(s.value - direct) < 1e-13 * std::abs(direct));
  CHECK(s.terms > 0);
}

TEST_CASE("tail decreases by about q per degree") {
  const double g = 6.0;
  const double l = std::sqrt(g * 1.25 / (0.5 * M_PI * M_PI));
  CHECK(contraction_ratio(3, g, l) == doctest::Approx(0.5));
  const auto pts = tube_points({{}, {}, {}}, {-2 * l, -l, 0.0});
  const auto c = exp_phi2_coefficients(g, 60);
  const double t40 = wightman_series(pts, c, 40, Mass{}).tail_bound;
  const double t41 = wightman_series(pts, c, 41, Mass{}).tail_bound;
  CHECK(t41 / t40 > 0.5);
  CHECK(t41 / t40 < 0.55);
}

TEST_CASE("tail remainder") {
  CHECK(tail_remainder(0.0, 3, 5) == 0.0);
  for (double q : {0.1, 0.5, 0.9})
    for (int K : {0, 3, 10}) CHECK(tail_remainder(q, 1, K) == doctest::Approx(std::pow(q, K + 1) / (1 - q)).epsilon(1e-15));
  long double brute = 0.0L;
  for (int m = 100000; m > 10; --m) brute += 0.5L * (m + 1) * (m + 2) * std::pow(0.5L, m);
  const double t = tail_remainder(0.5, 3, 10);
  CHECK(std::abs(t - static_cast<double>(brute)) < 1e-12 * static_cast<double>(brute));
  for (int E : {2, 6, 28})
    for (double q : {0.2, 0.7}) {
      long double b = 0.0L;
      for (int m = 200000; m > 7; --m) b += std::exp(std::lgamma(m + E) - std::lgamma(m + 1.0) - std::lgamma(double(E))) * std::pow((long double)q, m);
      CHECK(tail_remainder(q, E, 7) >= static_cast<double>(b) * (1 - 1e-12));
      CHECK(tail_remainder(q, E, 7) <= static_cast<double>(b) * (1 + 1e-9));
    }
  CHECK_THROWS_AS(tail_remainder(1.0, 2, 3), DomainError);
}

TEST_CASE("transposed series") {
  const double g = 6.0;
  const auto c = exp_phi2_coefficients(g, 30);
  const ComplexFourVector z1({0.3, 0.1, 0, 0}, {0, 0, 0, 0});
  const ComplexFourVector z2({0, 0.4, 0, 0.2}, {-2.0, 0.1, 0, 0});
  const ComplexFourVector a[2] = {z1, z2};
  const ComplexFourVector b[2] = {z2, z1};
  const SeriesValue t = transposed_series(a, 1, c, 30, Mass{});
  const SeriesValue o = wightman_series(b, c, 30, Mass{});
  CHECK(std::abs(t.value - o.value) < 1e-15);

  const ComplexFourVector zeta({0, 0, 0, 0}, {-2, 0, 0, 0});
  const ComplexFourVector p[2] = {ComplexFourVector{}, zeta};
  const ComplexFourVector q[2] = {zeta, ComplexFourVector{}};
  CHECK(std::abs(transposed_series(p, 1, c, 30, Mass{}).value - wightman_series(q, c, 30, Mass{}).value) < 1e-15);
  CHECK_THROWS_AS(transposed_series(q, 1, c, 30, Mass{}), DomainError);
}

TEST_CASE("connected series subtracts the factorized part") {
  const auto c = exp_phi2_coefficients(6.0, 30);
  const auto pts = tube_points({{0, 0.5, 0, 0}, {}}, {-2.0, 0.0});
  const cplx full = wightman_series(pts, c, 30, Mass{}).value;
  const cplx conn = connected_series(pts, 1, c, 30, Mass{}).value;
  CHECK(std::abs(full - 1.0 - conn) < 1e-15);
}

TEST_CASE("certificates") {
  CHECK(contraction_ratio(2, 6.0, 1.0) == doctest::Approx(6.0 / (M_PI * M_PI)));
  const auto pts = tube_points({{}, {}, {}}, {-3.0, -1.0, 0.0});
  CHECK(certificate_length(pts) == doctest::Approx(1.0));
  const auto bad = tube_points({{}, {}}, {1.0, 0.0});
  CHECK_THROWS_AS(certificate_length(bad), DomainError);
  CHECK(default_cutoff(2) == 30);
  CHECK(default_cutoff(3) == 12);
  CHECK(default_cutoff(4) == 8);
  CHECK(default_cutoff(7) == 6);
}

TEST_CASE("determinant form") {
  const double g = 6.0;
  const auto c = exp_phi2_coefficients(g, 40);
  const auto two = tube_points({{0, 0.4, 0, 0}, {}}, {-2.0, 0.0});
  const SeriesValue s2 = wightman_series(two, c, 40, Mass{});
  CHECK(std::abs(determinant_closed_form(two, g, Mass{}) - s2.value) <= s2.tail_bound + 1e-14);

  const auto three = tube_points({{}, {}, {}}, {-5.0, -2.5, 0.0});
  const SeriesValue s3 = wightman_series(three, c, 20, Mass{});
  REQUIRE(s3.certified);
  CHECK(std::abs(determinant_closed_form(three, g, Mass{}) - s3.value) <= s3.tail_bound + 1e-13);
}

TEST_CASE("massive series is dominated by the massless one on the imaginary axis") {
  const auto c = exp_phi2_coefficients(6.0, 30);
  const auto pts = tube_points({{}, {}}, {-1.5, 0.0});
  const SeriesValue a = wightman_series(pts, c, 30, Mass{});
  const SeriesValue b = wightman_series(pts, c, 30, Mass(1.0));
  CHECK(b.value.real() < a.value.real());
  CHECK(b.value.real() > 1.0);
  CHECK(b.propagator_rel_error < 1e-10);
}
