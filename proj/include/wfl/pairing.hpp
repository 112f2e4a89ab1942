#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "wfl/minkowski.hpp"
#include "wfl/propagator.hpp"
#include "wfl/wick.hpp"

namespace wfl {

/**
 * One separable term coef * prod_k (z_k - c_k)^{p_k} exp(-((z_k - c_k)/w_k)^2).
 */
struct GaussianTerm {
  cplx coef{1.0, 0.0};
  std::vector<double> center;
  std::vector<double> width;
  std::vector<int> powers;
};

/// Type-erased entire function on C^d with a hint for where its real mass sits.
class TestFunction {
 public:
  using Eval = std::function<cplx(std::span<const cplx>)>;

  TestFunction(int dim, Eval eval, double search_radius);

  int dimension() const { return dim_; }
  double search_radius() const { return radius_; }
  cplx operator()(std::span<const cplx> z) const { return eval_(z); }

 private:
  int dim_;
  Eval eval_;
  double radius_;
};

TestFunction operator-(const TestFunction& a, const TestFunction& b);

/**
 * Finite sum of Gaussian-times-monomial terms on C^d. Every member is entire
 * and rapidly decreasing on each strip, so it lies in A_l for all l.
 */
class AnalyticTestFunction {
 public:
  explicit AnalyticTestFunction(int dim);
  AnalyticTestFunction(int dim, std::vector<GaussianTerm> terms);

  /// prod_k exp(-(z_k/width)^2)
  static AnalyticTestFunction gaussian(int dim, double width = 1.0);
  /// Single term with per-coordinate widths, center and monomial powers.
  static AnalyticTestFunction gaussian_monomial(std::vector<double> width, std::vector<double> center,
                                                std::vector<int> powers, cplx coef = 1.0);

  int dimension() const { return dim_; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }

  cplx operator()(std::span<const cplx> z) const;
  /// Value of one coordinate factor of term t, without the coefficient.
  cplx factor(std::size_t t, int k, cplx zk) const;

  /// Radius beyond which |f(x + i y)| < tol * (its peak) for |y| <= l on coordinate k.
  double truncation_radius(int k, double l, double tol = 1e-12) const;
  /// Largest truncation radius over coordinates.
  double search_radius(double l = 0.0) const;

  TestFunction as_function() const;

  AnalyticTestFunction& operator+=(const AnalyticTestFunction& o);
  AnalyticTestFunction& operator*=(cplx s);

 private:
  int dim_;
  std::vector<GaussianTerm> terms_;
};

AnalyticTestFunction operator+(AnalyticTestFunction a, const AnalyticTestFunction& b);
AnalyticTestFunction operator*(cplx s, AnalyticTestFunction a);

/// Index of the norm sup_{|y|<=l} sup_x (1 + |x|)^N |f(x + i y)|, |.| the max-norm.
struct StripNorm {
  double l = 0.0;
  int N = 0;
};

struct StripNormOptions {
  int grid_points = 33;
  int max_sweeps = 6;
  int random_starts = 64;
  int ascent_starts = 3;
  std::uint64_t seed = 1;
};

struct StripNormValue {
  double value = 0.0;
  /// Relative gain of the final ascent sweep; an estimate of the missing part of the sup.
  double slack = 0.0;
  std::vector<cplx> argmax;
  std::uint64_t evaluations = 0;
};

/// Coordinate ascent over (x, y) with grid search and golden-section refinement.
StripNormValue strip_norm(const TestFunction& f, const StripNorm& norm, const StripNormOptions& opts = {});
StripNormValue strip_norm(const AnalyticTestFunction& f, const StripNorm& norm, const StripNormOptions& opts = {});

/**
 * Uniform lattice h Z^d truncated to the box where the test function is
 * non-negligible. Error estimates compare spacings h and 4h/3.
 */
struct LatticeSpec {
  double spacing = 0.075;
  double truncation_tolerance = 1e-10;
  bool estimate_error = true;
  bool use_openmp = true;
};

struct PairingValue {
  cplx value;
  double quadrature_error = 0.0;
  std::uint64_t lattice_points = 0;
};

struct PairSeriesValue {
  cplx value;
  double quadrature_error = 0.0;
  double tail_bound = std::numeric_limits<double>::infinity();
  double contraction_ratio_q = 0.0;
  bool certified = false;
  double norm = 0.0;          // strip norm of f entering the tail bound
  double norm_slack = 0.0;
  double norm_constant = 0.0;  // integral of (1 + |xi|)^{-(4n-3)} over R^{4(n-1)}
  int cutoff_degree = 0;
  std::uint64_t lattice_points = 0;
};

/// (w^R, f) = integral of prod Delta_+(zeta_i + .. + zeta_{j-1})^{r_ij} f at xi + i eta.
PairingValue pair_monomial(const ContractionMatrix& R, const AnalyticTestFunction& f,
                           std::span<const FourVector> eta, Mass m, const LatticeSpec& grid = {},
                           const QuadratureSpec& q = {});

/// Truncated sum_R (D_R / R!) (w^R, f) with the strip-norm tail bound.
PairSeriesValue pair_series(const CoefficientSequence& coeffs, const AnalyticTestFunction& f,
                            std::span<const FourVector> eta, int cutoff, Mass m, const LatticeSpec& grid = {},
                            const QuadratureSpec& q = {}, const StripNormOptions& norm_opts = {});

/// Two-point pairing of an arbitrary function G(w) of the propagator value, n = 2.
PairingValue pair_two_point(const std::function<cplx(cplx)>& G, const AnalyticTestFunction& f,
                            const FourVector& eta, Mass m, const LatticeSpec& grid = {},
                            const QuadratureSpec& q = {});

/// Same lattice sum evaluated point by point through f(z) and delta_plus; the test oracle.
PairingValue pair_two_point_reference(const std::function<cplx(cplx)>& G, const AnalyticTestFunction& f,
                                      const FourVector& eta, Mass m, const LatticeSpec& grid = {},
                                      const QuadratureSpec& q = {});

/// integral over R^d of (1 + |x|)^{-p}, max-norm, p > d: d 2^d B(d, p - d).
double polynomial_weight_integral(int d, double p);

/**
 * f_t(xi) = integral over R^4 of f(t^{-1}(xi, X)) dX for f on C^{4n}, with
 * x_j = X + a_j(xi) the inverse difference map. Separable terms reduce to one
 * 1-D integral per component.
 */
TestFunction pullback_ft(const AnalyticTestFunction& f, int n, int nodes_per_panel = 16, int panels = 4);

enum class MollifierKind { SquaredFejer, BumpTransform };

/**
 * Base kernel g(u) = s k(s u) with k the squared Fejer density
 * (3/(4 pi)) (sin(u/2)/(u/2))^4 or the normalized |bump transform|^2.
 */
struct MollifierSpec {
  MollifierKind kind = MollifierKind::SquaredFejer;
  int order = 16;
  double scale = 2.0;

  void validate() const;
};

/// One-dimensional kernel density g (the d-dimensional kernel is the product).
double mollifier_density(double u, const MollifierSpec& spec = {});
/// |u| beyond which the kernel's mass is below 5e-10.
double mollifier_support_radius(const MollifierSpec& spec = {});
/// integral of g_nu over R (one coordinate) by quadrature.
double mollifier_mass(int nu, const MollifierSpec& spec = {});
/// C_N = integral (1 + |x|)^N g(x) dx on R^d; infinite for the Fejer kernel when N >= 3.
double mollifier_moment(int N, int d, const MollifierSpec& spec = {});

/// f_nu(x0 + i y0) = integral g_nu(x0 - x) f(x + i y0) dx, coordinate by coordinate.
TestFunction mollify(const AnalyticTestFunction& f, int nu, const MollifierSpec& spec = {});

/// Fourier transform integral f(x) e^{i p.x} dx of every separable term.
cplx fourier_transform(const AnalyticTestFunction& f, std::span<const double> p);

struct MomentumGrid {
  double extent = 10.0;
  double spacing = 0.01;
};

/// max over the lattice of |f^(p)| exp(l sum_j |p_j|).
double momentum_growth_probe(const AnalyticTestFunction& f, double l, const MomentumGrid& grid = {});

}  // namespace wfl
