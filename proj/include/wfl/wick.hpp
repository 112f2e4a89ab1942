#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "wfl/minkowski.hpp"
#include "wfl/propagator.hpp"

namespace wfl {

/**
 * Coefficients d_r of a normal-ordered field sum_r (d_r / r!) :phi^r:, with a
 * growth certificate d_r^2 <= C (2 g)^r r! verified at construction.
 */
class CoefficientSequence {
 public:
  CoefficientSequence(std::vector<double> d, double growth_C, double growth_g);

  double operator[](std::size_t r) const { return d_[r]; }
  double at(std::size_t r) const;
  int r_max() const { return static_cast<int>(d_.size()) - 1; }
  std::span<const double> values() const { return d_; }
  double growth_C() const { return C_; }
  double growth_g() const { return g_; }

 private:
  std::vector<double> d_;
  double C_;
  double g_;
};

/// d_r = g^{r/2} r!/(r/2)! for even r, 0 for odd r; certificate (C = 1, g).
CoefficientSequence exp_phi2_coefficients(double g, int r_max);

/**
 * Symmetric n x n nonnegative integer matrix with zero diagonal, stored by its
 * strict upper triangle in row order (0,1),(0,2),...,(0,n-1),(1,2),...
 */
class ContractionMatrix {
 public:
  explicit ContractionMatrix(int n);
  ContractionMatrix(int n, std::vector<int> upper);

  static int pair_count(int n) { return n * (n - 1) / 2; }
  /// Index of the pair (i, j), 0-based with i < j.
  static int pair_index(int n, int i, int j) { return i * n - i * (i + 1) / 2 + (j - i - 1); }

  int n() const { return n_; }
  const std::vector<int>& upper() const { return upper_; }
  int at(int i, int j) const;
  int degree() const;
  /// R_j = sum_i r_ij
  std::vector<int> column_sums() const;
  /// R! = prod_{i<j} r_ij!
  double factorial() const;

  friend bool operator==(const ContractionMatrix&, const ContractionMatrix&) = default;

 private:
  int n_;
  std::vector<int> upper_;
};

/// D_R = prod_j d_{R_j}
double big_D(const CoefficientSequence& coeffs, const ContractionMatrix& R);

/// C(degree + E - 1, E - 1), E = n(n-1)/2. Returned as double; exact below 2^53.
double contraction_count(int n, int degree);

/// All matrices with |R| = degree, ascending lexicographic order of the upper triangle.
std::vector<ContractionMatrix> enumerate_contractions(int n, int degree);

/**
 * A truncated series value with its convergence certificates.
 *
 * `contraction_ratio_q` is the uniform ratio (g/(pi^2 l^2)) sum_{k<n} 1/k^2 with
 * l the smallest imaginary invariant of the consecutive differences; `tail_bound`
 * is rigorous when `certified` and includes `rounding_bound`, an a priori bound
 * on the floating-point error of the summation. The local ratio uses the
 * evaluated |w_ij| in the same majorant and remains meaningful near real points
 * where l -> 0.
 */
struct SeriesValue {
  cplx value;
  int cutoff_degree = 0;
  double tail_bound = std::numeric_limits<double>::infinity();
  double contraction_ratio_q = 0.0;
  bool certified = false;
  double certificate_length = 0.0;
  double local_ratio_q = 0.0;
  double local_tail_bound = std::numeric_limits<double>::infinity();
  bool locally_certified = false;
  double rounding_bound = 0.0;
  double propagator_rel_error = 0.0;
  std::uint64_t terms = 0;
  std::uint64_t term_bound_violations = 0;
  std::vector<cplx> degree_sums;
};

struct SeriesOptions {
  bool check_term_bounds = false;
  bool use_openmp = true;
};

/// Default truncation degree for n-point evaluations: 30, 12, 8 for n = 2, 3, 4; 6 beyond.
int default_cutoff(int n);

/// prod_{i<j} Delta_+(z_i - z_j)^{r_ij}
cplx monomial(std::span<const ComplexFourVector> points, const ContractionMatrix& R, Mass m,
              const QuadratureSpec& q = {});

/// (g/(pi^2 l^2)) sum_{k=1}^{n-1} 1/k^2
double contraction_ratio(int n, double g, double l);

/// min_j sqrt((Im zeta_j)^2) over consecutive differences; DomainError if any leaves V^-.
double certificate_length(std::span<const ComplexFourVector> points);

SeriesValue wightman_series(std::span<const ComplexFourVector> points, const CoefficientSequence& coeffs,
                            int cutoff, Mass m, const QuadratureSpec& q = {}, const SeriesOptions& opts = {});

/**
 * Series of the permuted expectation value with x_k and x_{k+1} exchanged
 * (k is 1-based). Imaginary parts must satisfy y_i - y_j in V^- for i < j,
 * except y_k - y_{k+1} in V^+.
 */
SeriesValue transposed_series(std::span<const ComplexFourVector> points, int k, const CoefficientSequence& coeffs,
                              int cutoff, Mass m, const QuadratureSpec& q = {}, const SeriesOptions& opts = {});

/**
 * Sum over contraction matrices with at least one r_ij != 0 for i <= k < j
 * (1-based): the truncated W_n - W_k W_m. Certificates as in wightman_series.
 */
SeriesValue connected_series(std::span<const ComplexFourVector> points, int k, const CoefficientSequence& coeffs,
                             int cutoff, Mass m, const QuadratureSpec& q = {}, const SeriesOptions& opts = {});

/// Upper bound on sum_{m > cutoff} C(m+E-1, E-1) q^m, q in [0, 1).
double tail_remainder(double q, int E, int cutoff);

/// Massless two-point function of :exp g phi^2:, (1 - l0^4/(zeta^2)^2)^{-1/2}, l0^2 = g/(2 pi^2).
cplx two_point_closed_form(cplx zeta_sq, double g);

struct GeneratingCheck {
  cplx partial_sum;
  cplx closed_form;
};

/// sum_{m<=cutoff} (2m)!/(m!)^2 z^m against 1/sqrt(1 - 4z).
GeneratingCheck generating_identity_check(cplx z, int cutoff);

/**
 * Experimental: det(I - 2 g M)^{-1/2} with M the off-diagonal propagator matrix.
 * Agrees with the series at n = 2; for n >= 3 it is only a numerical cross-check.
 */
cplx determinant_closed_form(std::span<const ComplexFourVector> points, double g, Mass m,
                             const QuadratureSpec& q = {});

}  // namespace wfl
