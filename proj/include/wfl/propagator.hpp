#pragma once

#include "wfl/minkowski.hpp"

namespace wfl {

/// Field mass mu >= 0 in inverse-length units.
class Mass {
 public:
  constexpr Mass() = default;
  explicit Mass(double mu);
  constexpr double mu() const { return mu_; }
  constexpr bool massless() const { return mu_ == 0.0; }

 private:
  double mu_ = 0.0;
};

/**
 * Radial quadrature settings for the massive two-point function.
 *
 * The integrand is majorized by s e^{-tau s}; the radial cutoff S is the
 * smallest value whose majorant tail falls below `tail_tolerance` times the
 * massless bound 1/(4 pi^2 tau^2). `node_count` is the Gauss-Legendre order
 * per panel; the panel count is doubled until the rule of order node_count and
 * the rule of order node_count/2 agree to the same relative tolerance.
 */
struct QuadratureSpec {
  double max_radial_momentum = 1e6;
  int node_count = 16;
  double tail_tolerance = 1e-13;

  void validate() const;
};

/// Value plus an estimate of its absolute quadrature error.
struct PropagatorValue {
  cplx value;
  double error_estimate = 0.0;
};

/// -1/(4 pi^2 zeta^2); SingularityError when |zeta^2| < 1e-12.
cplx delta_plus_massless(const ComplexFourVector& zeta);

/// Radial quadrature in the rest frame of Im zeta; Im zeta must be past timelike.
cplx delta_plus_massive(const ComplexFourVector& zeta, Mass m, const QuadratureSpec& q = {});
PropagatorValue delta_plus_massive_detailed(const ComplexFourVector& zeta, Mass m,
                                            const QuadratureSpec& q = {});

/**
 * Continuation to points with spacelike real part, (Re z)^2 < -l^2 < (Im z)^2,
 * via real Lorentz reduction and the complex rotation (z0,z1,..) -> (i z1, i z0, ..).
 * Points with past-timelike imaginary part are passed to delta_plus_massive.
 */
cplx delta_plus_extended(const ComplexFourVector& z, Mass m, double l, const QuadratureSpec& q = {});
PropagatorValue delta_plus_extended_detailed(const ComplexFourVector& z, Mass m, double l,
                                             const QuadratureSpec& q = {});

/**
 * Two-point function anywhere on the extended tube. Picks the route (tube,
 * reflected tube, or complex rotation) that leaves the largest imaginary
 * invariant for the radial quadrature. Massless values use the closed form.
 */
cplx delta_plus(const ComplexFourVector& z, Mass m, const QuadratureSpec& q = {});
PropagatorValue delta_plus_detailed(const ComplexFourVector& z, Mass m, const QuadratureSpec& q = {});

/// Massless bound 1/(4 pi^2 y^2) for y in V^-.
double tube_bound(const FourVector& y);
/// Extended-tube bound 1/(2 pi^2 (y^2 - x^2)).
double extended_tube_bound(const ComplexFourVector& z);

}  // namespace wfl
