#include <cmath>

#include "doctest.h"
#include "wfl/errors.hpp"
#include "wfl/propagator.hpp"
#include "wfl/sampling.hpp"

using namespace wfl;

namespace {

const double kFourPi2 = 4.0 * M_PI * M_PI;

ComplexFourVector imag_time(double tau) { return ComplexFourVector({0, 0, 0, 0}, {-tau, 0, 0, 0}); }

// K_1(x) = int_0^inf exp(-x cosh t) cosh t dt for Re x > 0, trapezoid rule.
cplx bessel_k1(cplx x) {
  const double h = 1e-3;
  cplx sum = 0.5 * std::exp(-x);
  for (int i = 1;; ++i) {
    const double t = i * h;
    const cplx term = std::exp(-x * std::cosh(t)) * std::cosh(t);
    sum += term;
    if (std::abs(term) < 1e-300 || (t > 2 && std::abs(term) < 1e-22 * std::abs(sum))) break;
  }
  return h * sum;
}

// mu K_1(mu s) / (4 pi^2 s), s = sqrt(-zeta^2)
cplx massive_oracle(const ComplexFourVector& z, double mu) {
  const cplx s = std::sqrt(-minkowski_square(z));
  return mu * bessel_k1(mu * s) / (kFourPi2 * s);
}

}  // namespace

TEST_CASE("massless closed form") {
  CHECK(std::abs(delta_plus_massless(imag_time(1.0)) - 1.0 / kFourPi2) < 1e-17);
  CHECK(std::abs(delta_plus_massless(imag_time(2.0)) - 1.0 / (16 * M_PI * M_PI)) < 1e-17);
  CHECK(std::abs(delta_plus_massless(ComplexFourVector::real({0, 1, 0, 0})) - 1.0 / kFourPi2) < 1e-17);
  CHECK(std::abs(1.0 / kFourPi2 - 2.533030e-2) < 1e-8);
  CHECK_THROWS_AS(delta_plus_massless(ComplexFourVector::real({1, 1, 0, 0})), SingularityError);
}

TEST_CASE("massive quadrature at zero mass reproduces the closed form") {
  const cplx v = delta_plus_massive(imag_time(1.0), Mass(0.0));
  CHECK(std::abs(v - 1.0 / kFourPi2) < 1e-8 / kFourPi2);
}

TEST_CASE("massive values against the Bessel representation") {
  for (double mu : {0.1, 1.0, 3.0, 10.0}) {
    for (double tau : {0.2, 1.0, 2.5}) {
      const auto z = imag_time(tau);
      const double oracle = mu * std::cyl_bessel_k(1.0, mu * tau) / (kFourPi2 * tau);
      const PropagatorValue v = delta_plus_massive_detailed(z, Mass(mu));
      CHECK(std::abs(v.value - oracle) <= 1e-10 * oracle + v.error_estimate);
    }
  }
  Rng rng(17);
  for (int i = 0; i < 40; ++i) {
    const ComplexFourVector z(sample_box(rng, 2.0), sample_past_timelike(rng, 0.3, 2.0, 1.5));
    const double mu = rng.uniform(0.2, 3.0);
    const cplx oracle = massive_oracle(z, mu);
    CHECK(std::abs(delta_plus_massive(z, Mass(mu)) - oracle) < 1e-9 * std::abs(oracle));
  }
}

TEST_CASE("massive value is dominated by the massless bound and decreases in mass") {
  const auto z = imag_time(1.0);
  const cplx v1 = delta_plus_massive(z, Mass(1.0));
  const cplx v10 = delta_plus_massive(z, Mass(10.0));
  CHECK(std::abs(v1.imag()) < 1e-15);
  CHECK(v1.real() > 0.0);
  CHECK(v1.real() < 1.0 / kFourPi2);
  CHECK(v10.real() < v1.real());
  CHECK(v10.real() > 0.0);
}

TEST_CASE("massive quadrature rejects points outside the tube") {
  CHECK_THROWS_AS(delta_plus_massive(ComplexFourVector::real({0, 1, 0, 0}), Mass(1.0)), DomainError);
  CHECK_THROWS_AS(delta_plus_massive(ComplexFourVector({0, 0, 0, 0}, {1, 0, 0, 0}), Mass(1.0)), DomainError);
}

TEST_CASE("extended tube point") {
  const ComplexFourVector z({0, -2, 0, 0}, {0.5, 0, 0, 0});
  const double expect = 1.0 / (17.0 * M_PI * M_PI);
  CHECK(std::abs(delta_plus_extended(z, Mass{}, 0.4) - expect) < 1e-16);
  CHECK(std::abs(delta_plus_massless(z) - expect) < 1e-16);
  CHECK(std::abs(delta_plus_extended(z, Mass{}, 0.4)) <= extended_tube_bound(z));
  CHECK(extended_tube_bound(z) == doctest::Approx(1.0 / (2 * M_PI * M_PI * 4.25)));

  // the massive rotation path against the Bessel oracle at zeta^2 = -4.25
  const double s = std::sqrt(4.25);
  const double oracle = std::cyl_bessel_k(1.0, s) / (kFourPi2 * s);
  const PropagatorValue v = delta_plus_extended_detailed(z, Mass(1.0), 0.4);
  CHECK(std::abs(v.value - oracle) <= 1e-10 * oracle + v.error_estimate);
}

TEST_CASE("real spacelike points are even") {
  const auto xi = ComplexFourVector::real({0, 3, 0, 0});
  CHECK(delta_plus(xi, Mass{}) == delta_plus(-xi, Mass{}));
  const cplx a = delta_plus(xi, Mass(1.0));
  const cplx b = delta_plus(-xi, Mass(1.0));
  CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
  const double oracle = std::cyl_bessel_k(1.0, 3.0) / (kFourPi2 * 3.0);
  CHECK(std::abs(a - oracle) < 1e-9 * oracle);
}

TEST_CASE("dispatcher on the reflected tube") {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    const ComplexFourVector z(sample_box(rng, 1.0), -sample_past_timelike(rng, 0.5, 2.0, 1.0));
    const cplx oracle = massive_oracle(z, 1.5);
    CHECK(std::abs(delta_plus(z, Mass(1.5)) - oracle) < 1e-9 * std::abs(oracle));
  }
}

TEST_CASE("tube bound holds on random samples") {
  Rng rng(29);
  for (int i = 0; i < 500; ++i) {
    const FourVector y = sample_past_timelike(rng, 0.2, 3.0, 2.0);
    const ComplexFourVector z(sample_box(rng, 3.0), y);
    const double b = tube_bound(y);
    CHECK(std::abs(delta_plus_massless(z)) <= b * (1 + 1e-12));
    const PropagatorValue v = delta_plus_massive_detailed(z, Mass(1.0));
    CHECK(std::abs(v.value) <= b * (1 + 1e-12) + v.error_estimate);
  }
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec q;
  q.node_count = 0;
  CHECK_THROWS_AS(q.validate(), DomainError);
  CHECK_THROWS_AS(Mass(-1.0), DomainError);
}
