#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wfl/pairing.hpp"
#include "wfl/propagator.hpp"
#include "wfl/wick.hpp"

namespace wfl {

/**
 * Outcome of one verification suite. Margins are positive when the checked
 * inequality holds; passed = worst_margin >= -tolerance.
 */
struct CheckReport {
  std::string check_name;
  std::uint64_t samples = 0;
  double worst_margin = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::vector<std::string> details;
  std::vector<std::pair<std::string, double>> metrics;

  double metric(const std::string& name) const;
};

/**
 * Three reports: "tube_bound" |Delta_+(x+iy)| <= 1/(4 pi^2 y^2) on the tube,
 * "pair_bound" |Delta_+(z_i - z_j)| <= 1/(4 pi^2 l^2 (j-i)^2) on three-point
 * configurations with consecutive imaginary differences in V^-_l, and
 * "extended_tube_bound" |Delta_+| <= 1/(2 pi^2 (y^2 - x^2)) for x^2 < -l^2 < y^2.
 * Margins are relative, (bound - |Delta| + quadrature error) / bound.
 */
std::vector<CheckReport> check_propagator_bounds(Mass m, double l, int sample_count, std::uint64_t seed,
                                                 const QuadratureSpec& q = {});

struct Theorem1Certificate {
  double q = 0.0;
  bool certified = false;
};

/// q = (g/(pi^2 l^2)) sum_{k<n} 1/k^2, certified iff q < 1.
Theorem1Certificate certify_theorem1(int n, double g, double l);

/// W_2(-conj zeta) = conj W_2(zeta) through the closed form (massless) and the truncated series.
CheckReport check_hermiticity(double g, Mass m, int sample_count, std::uint64_t seed, int cutoff = 20,
                              const QuadratureSpec& q = {});

/// Spatial points (0, x) with components uniform in [-scale, scale].
std::vector<FourVector> sample_spatial_points(int count, std::uint64_t seed, double scale = 1.0);

/**
 * Gram matrix M_ab = W_2(conj z_a - z_b), z_a = x_a + i T e_0. The Hermiticity
 * defect max |M - M^dagger| is reported before the eigenvalues of the Hermitian
 * part are computed.
 */
CheckReport check_gram_positivity(double g, Mass m, std::span<const FourVector> points, double T, int cutoff = 30,
                                  const QuadratureSpec& q = {});

/// Series values at sampled certified configurations before and after a random proper orthochronous map.
CheckReport check_lorentz_invariance(double g, Mass m, int sample_count, std::uint64_t seed,
                                     const QuadratureSpec& q = {});

/// count values from a to b in geometric progression.
std::vector<double> geometric_grid(double a, double b, int count);

/// Points i (j-1) l e_0 with q = 1/4; the cluster scan's base configuration.
std::vector<ComplexFourVector> cluster_base_configuration(double g, int n);

/// D(lambda) = |W_n - W_k W_m| with the last n - k points translated by lambda a.
std::vector<double> cluster_scan(double g, Mass m, const FourVector& a, std::span<const double> lambda_grid, int n,
                                 int k, int cutoff = -1, const QuadratureSpec& q = {});

/// Least-squares slope of log D against log lambda over [lambda_max / 10, lambda_max].
double cluster_slope(std::span<const double> lambda_grid, std::span<const double> D);

/// Slope <= -1.8 over the largest decade, stable within 0.05 when the log spacing is halved.
CheckReport check_cluster_decay(double g, Mass m, const FourVector& a, std::span<const double> lambda_grid, int n,
                                int k, int cutoff = -1, const QuadratureSpec& q = {});

/**
 * Original series at xi + i eta(-eps) against the transposed series at
 * xi + i eta(+eps): eta_j = -2 eps e_0 for j != k and eta_k = -+eps e_0.
 * The difference is extrapolated to eps = 0 by first-order Richardson.
 */
CheckReport jost_symmetry_check(double g, Mass m, std::span<const FourVector> xi, int k,
                                std::span<const double> epsilons, int cutoff = -1, const QuadratureSpec& q = {});

/// Round trip of the difference map and the imaginary-spread bound |y_j| <= l (n-1)/2.
CheckReport check_coordinate_transform(int n_min, int n_max, int draws, std::uint64_t seed);

/// ||f_t||_{l,N} <= 2^N (int (1+|X|)^{-5} dX) ||f||_{l(n-1)/2, N+5} for f on R^{4n}.
CheckReport check_pullback_norm_inequality(const AnalyticTestFunction& f, int n, std::span<const double> l_grid,
                                           std::span<const int> N_grid, const StripNormOptions& opts = {});

/**
 * d = 1, f = exp(-z^2): ||f_nu - f||_{l,N} strictly decreasing in nu, last below
 * 0.05 of the first, unit kernel mass within 1e-8 and ||f_nu|| <= C_N ||f||.
 */
CheckReport check_mollifier_demo(std::span<const int> nus, double l, int N, const MollifierSpec& spec = {});

}  // namespace wfl
