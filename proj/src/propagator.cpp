#include "wfl/propagator.hpp"

#include <cmath>
#include <optional>

#include "wfl/errors.hpp"
#include "wfl/quadrature.hpp"

namespace wfl {

namespace {

constexpr double kFourPiSq = 4.0 * M_PI * M_PI;
constexpr double kLightConeSingularity = 1e-12;
constexpr int kMaxDoublings = 10;

using Vec3 = std::array<double, 3>;

Vec3 spatial(const FourVector& v) { return {v[1], v[2], v[3]}; }

// sin(u)/u with the removable singularity filled in.
double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

// Solves e^{-u}(u + 1) = tol for u > 0.
double majorant_cutoff(double tol) {
  double u = -std::log(tol);
  for (int i = 0; i < 50; ++i) u = -std::log(tol) + std::log(u + 1.0);
  return u;
}

/**
 * (1/4pi^2) int_0^S s^2/w(s) j0(s r) exp(-i w (t - i tau)) ds, w = sqrt(s^2 + mu^2).
 * Error estimate is relative to the massless bound 1/(4 pi^2 tau^2).
 */
PropagatorValue rest_frame_integral(double t, double r, double tau, double mu, const QuadratureSpec& q) {
  const double bound = 1.0 / (kFourPiSq * tau * tau);
  const double cutoff = majorant_cutoff(q.tail_tolerance) / tau;
  if (cutoff > q.max_radial_momentum) {
    throw PrecisionError("delta_plus_massive: radial cutoff exceeds max_radial_momentum");
  }
  auto integrand = [&](double s) -> cplx {
    const double w = std::sqrt(s * s + mu * mu);
    const double amp = s * s / w * sinc(s * r) * std::exp(-w * tau);
    return {amp * std::cos(w * t), -amp * std::sin(w * t)};
  };

  // Breakpoints: geometric grading near s = 0 when the mass puts branch points at +-i mu.
  std::vector<double> breaks{0.0};
  const double freq = std::abs(t) + r;
  double panel = std::min(2.0 / tau, 6.0 / std::max(freq, 1e-300));
  if (mu > 0.0 && mu < panel) {
    for (double b = mu / 4.0; b < panel; b *= 2.0) breaks.push_back(b);
  }
  const double start = breaks.back();
  if (start < cutoff) {
    const int base = static_cast<int>(std::ceil((cutoff - start) / panel));
    for (int i = 1; i <= base; ++i) breaks.push_back(start + (cutoff - start) * i / base);
  }

  const int hi_order = std::max(2, q.node_count);
  const int lo_order = std::max(1, hi_order / 2);
  const double target = 10.0 * q.tail_tolerance * bound * kFourPiSq;

  std::vector<double> current = breaks;
  for (int level = 0; level <= kMaxDoublings; ++level) {
    CompensatedComplexSum hi;
    CompensatedComplexSum lo;
    for (std::size_t p = 0; p + 1 < current.size(); ++p) {
      hi.add(composite_gauss_legendre<cplx>(integrand, current[p], current[p + 1], 1, hi_order));
      lo.add(composite_gauss_legendre<cplx>(integrand, current[p], current[p + 1], 1, lo_order));
    }
    const double err = std::abs(hi.value() - lo.value());
    if (err <= target) {
      const double tail = q.tail_tolerance * bound * kFourPiSq;
      return {hi.value() / kFourPiSq, (err + tail) / kFourPiSq};
    }
    std::vector<double> refined;
    refined.reserve(2 * current.size());
    for (std::size_t p = 0; p + 1 < current.size(); ++p) {
      refined.push_back(current[p]);
      refined.push_back(0.5 * (current[p] + current[p + 1]));
    }
    refined.push_back(current.back());
    current = std::move(refined);
  }
  throw PrecisionError("delta_plus_massive: panel refinement did not converge");
}

// Real Lorentz transform L such that L z has Im part (s, 0, 0, 0) [timelike case]
// or (0, y') [spacelike case], and Re part with spatial component along -e1.
std::optional<LorentzTransform> reduction_frame(const ComplexFourVector& z) {
  const FourVector& x = z.re;
  const FourVector& y = z.im;
  const double y2 = minkowski_square(y);
  LorentzTransform boost;
  if (max_norm(y) == 0.0) {
    // real point: boost to x^0 = 0
    const double xs2 = x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    if (!(minkowski_square(x) < 0.0)) return std::nullopt;
    const double k = x[0] / xs2;
    boost = LorentzTransform::boost({k * x[1], k * x[2], k * x[3]});
  } else if (std::abs(y2) <= kGeometryTolerance) {
    return std::nullopt;
  } else if (y2 > 0.0) {
    boost = LorentzTransform::boost({y[1] / y[0], y[2] / y[0], y[3] / y[0]});
  } else {
    const double ys2 = y[1] * y[1] + y[2] * y[2] + y[3] * y[3];
    const double k = y[0] / ys2;
    boost = LorentzTransform::boost({k * y[1], k * y[2], k * y[3]});
  }
  const FourVector xb = boost * x;
  if (xb.spatial_norm() == 0.0) return std::nullopt;
  const auto rot = LorentzTransform::rotation_taking(spatial(xb), {-1.0, 0.0, 0.0});
  return rot * boost;
}

std::optional<ComplexFourVector> rotated_into_tube(const ComplexFourVector& z) {
  if (!is_spacelike(z.re)) return std::nullopt;
  const auto frame = reduction_frame(z);
  if (!frame) return std::nullopt;
  ComplexFourVector w = complex_lorentz_rotation(frame->apply(z));
  if (!in_cone_v_minus(w.im, 0.0)) return std::nullopt;
  return w;
}

PropagatorValue evaluate_in_tube(const ComplexFourVector& zeta, Mass m, const QuadratureSpec& q) {
  if (m.massless()) return {delta_plus_massless(zeta), 0.0};
  return delta_plus_massive_detailed(zeta, m, q);
}

}  // namespace

Mass::Mass(double mu) : mu_(mu) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("mass must be finite and >= 0");
}

void QuadratureSpec::validate() const {
  if (!(max_radial_momentum > 0.0)) throw DomainError("max_radial_momentum must be positive");
  if (node_count < 2 || node_count > 256) throw DomainError("node_count must be in [2, 256]");
  if (!(tail_tolerance > 0.0) || tail_tolerance >= 1.0) throw DomainError("tail_tolerance must be in (0, 1)");
}

cplx delta_plus_massless(const ComplexFourVector& zeta) {
  const cplx s = minkowski_square(zeta);
  if (std::abs(s) < kLightConeSingularity) {
    throw SingularityError("delta_plus_massless: point on the light cone");
  }
  return -1.0 / (kFourPiSq * s);
}

PropagatorValue delta_plus_massive_detailed(const ComplexFourVector& zeta, Mass m, const QuadratureSpec& q) {
  q.validate();
  if (!in_cone_v_minus(zeta.im, 0.0)) {
    throw DomainError("delta_plus_massive: imaginary part is not past timelike");
  }
  const LorentzTransform boost = rest_frame_boost(zeta.im);
  const FourVector x = boost * zeta.re;
  const double tau = std::sqrt(minkowski_square(zeta.im));
  return rest_frame_integral(x[0], x.spatial_norm(), tau, m.mu(), q);
}

cplx delta_plus_massive(const ComplexFourVector& zeta, Mass m, const QuadratureSpec& q) {
  return delta_plus_massive_detailed(zeta, m, q).value;
}

PropagatorValue delta_plus_extended_detailed(const ComplexFourVector& z, Mass m, double l,
                                             const QuadratureSpec& q) {
  if (!(l > 0.0)) throw DomainError("delta_plus_extended: l must be positive");
  if (in_cone_v_minus(z.im, 0.0)) return evaluate_in_tube(z, m, q);
  const double x2 = minkowski_square(z.re);
  const double y2 = minkowski_square(z.im);
  if (!(x2 < -l * l - kGeometryTolerance && y2 > -l * l + kGeometryTolerance)) {
    throw DomainError("delta_plus_extended: point outside x^2 < -l^2 < y^2");
  }
  if (std::abs(y2) <= kGeometryTolerance) {
    throw DomainError("delta_plus_extended: lightlike imaginary part is excluded");
  }
  const auto w = rotated_into_tube(z);
  if (!w) throw DomainError("delta_plus_extended: reduction failed to reach the tube");
  return evaluate_in_tube(*w, m, q);
}

cplx delta_plus_extended(const ComplexFourVector& z, Mass m, double l, const QuadratureSpec& q) {
  return delta_plus_extended_detailed(z, m, l, q).value;
}

PropagatorValue delta_plus_detailed(const ComplexFourVector& z, Mass m, const QuadratureSpec& q) {
  std::optional<ComplexFourVector> best;
  double best_square = 0.0;
  auto consider = [&](const ComplexFourVector& w) {
    const double s = minkowski_square(w.im);
    if (!best || s > best_square) {
      best = w;
      best_square = s;
    }
  };
  if (in_cone_v_minus(z.im, 0.0)) consider(z);
  if (in_cone_v_plus(z.im, 0.0)) consider(-z);
  if (!m.massless() || !best) {
    if (auto w = rotated_into_tube(z)) consider(*w);
  }
  if (!best) throw DomainError("delta_plus: point is not in the extended tube");
  if (m.massless()) return {delta_plus_massless(z), 0.0};
  return delta_plus_massive_detailed(*best, m, q);
}

cplx delta_plus(const ComplexFourVector& z, Mass m, const QuadratureSpec& q) {
  return delta_plus_detailed(z, m, q).value;
}

double tube_bound(const FourVector& y) { return 1.0 / (kFourPiSq * minkowski_square(y)); }

double extended_tube_bound(const ComplexFourVector& z) {
  return 1.0 / (2.0 * M_PI * M_PI * (minkowski_square(z.im) - minkowski_square(z.re)));
}

}  // namespace wfl
