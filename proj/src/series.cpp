#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "wfl/errors.hpp"
#include "wfl/kernels/series_kernel.hpp"
#include "wfl/quadrature.hpp"
#include "wfl/wick.hpp"

namespace wfl {

namespace {

struct PairTable {
  std::vector<cplx> values;
  double max_rel_error = 0.0;
};

// Evaluates w_e = Delta_+(a_e - b_e) once per pair.
PairTable evaluate_pairs(std::span<const ComplexFourVector> diffs, Mass m, const QuadratureSpec& q) {
  PairTable t;
  t.values.reserve(diffs.size());
  for (const auto& d : diffs) {
    const PropagatorValue v = delta_plus_detailed(d, m, q);
    t.values.push_back(v.value);
    if (std::abs(v.value) > 0.0) t.max_rel_error = std::max(t.max_rel_error, v.error_estimate / std::abs(v.value));
  }
  return t;
}

std::vector<ComplexFourVector> ordered_pair_differences(std::span<const ComplexFourVector> points) {
  const int n = static_cast<int>(points.size());
  std::vector<ComplexFourVector> out;
  out.reserve(ContractionMatrix::pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(points[i] - points[j]);
  return out;
}

void check_inputs(std::span<const ComplexFourVector> points, const CoefficientSequence& coeffs, int cutoff) {
  if (points.size() < 2) throw DomainError("series: need at least two points");
  if (cutoff < 0) throw DomainError("series: cutoff must be >= 0");
  if (coeffs.r_max() < cutoff) {
    throw DomainError("series: coefficients stored up to r = " + std::to_string(coeffs.r_max()) +
                      ", cutoff needs " + std::to_string(cutoff));
  }
}

SeriesValue run_series(int n, const PairTable& table, const CoefficientSequence& coeffs, int cutoff,
                       double cert_length, int cross_split, const SeriesOptions& opts) {
  const int E = ContractionMatrix::pair_count(n);
  const double prefactor = std::pow(coeffs.growth_C(), 0.5 * n);

  SeriesValue out;
  out.cutoff_degree = cutoff;
  out.certificate_length = cert_length;
  out.propagator_rel_error = table.max_rel_error;
  if (cert_length > 0.0) {
    out.contraction_ratio_q = contraction_ratio(n, coeffs.growth_g(), cert_length);
  } else {
    out.contraction_ratio_q = std::numeric_limits<double>::infinity();
  }
  out.certified = out.contraction_ratio_q < 1.0;
  if (out.certified) out.tail_bound = prefactor * tail_remainder(out.contraction_ratio_q, E, cutoff);

  // Local ratio 2g max_j sum_{i != j} |w_ij|, the pointwise form of the same majorant.
  std::vector<double> row(n, 0.0);
  int e = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++e) {
      row[i] += std::abs(table.values[e]);
      row[j] += std::abs(table.values[e]);
    }
  double worst = 0.0;
  for (double s : row) worst = std::max(worst, s);
  out.local_ratio_q = 2.0 * coeffs.growth_g() * worst;
  out.locally_certified = out.local_ratio_q < 1.0;
  if (out.locally_certified) out.local_tail_bound = prefactor * tail_remainder(out.local_ratio_q, E, cutoff);

  kernels::SeriesProblem problem;
  problem.n = n;
  problem.cutoff = cutoff;
  problem.pair_values = table.values;
  problem.coefficients = coeffs.values();
  problem.cross_split = cross_split;
  problem.check_term_bound = opts.check_term_bounds;
  problem.term_bound_ratio = std::min(out.contraction_ratio_q, out.local_ratio_q);
  problem.term_bound_prefactor = prefactor;

  const kernels::SeriesSum sum = opts.use_openmp ? kernels::series_sum_omp(problem) : kernels::series_sum_serial(problem);
  out.value = sum.value;
  out.degree_sums = sum.degree_sums;

  // sum |terms| <= prefactor (1 - q)^{-E}; each term carries O(cutoff + E) rounded products
  const double q_eff = std::min(out.contraction_ratio_q, out.local_ratio_q);
  if (q_eff < 1.0) {
    const double u = 0.5 * std::numeric_limits<double>::epsilon();
    const double gamma = (3.0 * (cutoff + E) + 8.0) * u;
    out.rounding_bound = gamma * prefactor * std::pow(1.0 - q_eff, -E) + 2.0 * u * std::abs(out.value);
    if (out.certified) out.tail_bound += out.rounding_bound;
    if (out.locally_certified) out.local_tail_bound += out.rounding_bound;
  }
  out.terms = sum.terms;
  out.term_bound_violations = sum.term_bound_violations;
  return out;
}

}  // namespace

int default_cutoff(int n) {
  switch (n) {
    case 2:
      return 30;
    case 3:
      return 12;
    case 4:
      return 8;
    default:
      return 6;
  }
}

cplx monomial(std::span<const ComplexFourVector> points, const ContractionMatrix& R, Mass m, const QuadratureSpec& q) {
  const int n = static_cast<int>(points.size());
  if (n != R.n()) throw DomainError("monomial: matrix size does not match point count");
  cplx w = 1.0;
  int e = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++e) {
      const int r = R.upper()[e];
      if (r == 0) continue;
      const ComplexFourVector d = points[i] - points[j];
      if (!in_cone_v_minus(d.im, 0.0)) {
        throw DomainError("monomial: difference z_" + std::to_string(i + 1) + " - z_" + std::to_string(j + 1) +
                          " is not in the past tube");
      }
      w *= std::pow(delta_plus(d, m, q), r);
    }
  return w;
}

double contraction_ratio(int n, double g, double l) {
  if (n < 2 || !(g > 0.0) || !(l > 0.0)) throw DomainError("contraction_ratio: need n >= 2, g > 0, l > 0");
  double s = 0.0;
  for (int k = n - 1; k >= 1; --k) s += 1.0 / (static_cast<double>(k) * k);
  return g / (M_PI * M_PI * l * l) * s;
}

double certificate_length(std::span<const ComplexFourVector> points) {
  if (points.size() < 2) throw DomainError("certificate_length: need at least two points");
  double l = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < points.size(); ++j) {
    const FourVector eta = points[j].im - points[j + 1].im;
    if (!in_cone_v_minus(eta, 0.0)) {
      throw DomainError("configuration is not in the tube: Im(z_" + std::to_string(j + 1) + " - z_" +
                        std::to_string(j + 2) + ") is not past timelike");
    }
    l = std::min(l, std::sqrt(minkowski_square(eta)));
  }
  return l;
}

SeriesValue wightman_series(std::span<const ComplexFourVector> points, const CoefficientSequence& coeffs, int cutoff,
                            Mass m, const QuadratureSpec& q, const SeriesOptions& opts) {
  check_inputs(points, coeffs, cutoff);
  const double l = certificate_length(points);
  const PairTable table = evaluate_pairs(ordered_pair_differences(points), m, q);
  return run_series(static_cast<int>(points.size()), table, coeffs, cutoff, l, 0, opts);
}

SeriesValue transposed_series(std::span<const ComplexFourVector> points, int k, const CoefficientSequence& coeffs,
                              int cutoff, Mass m, const QuadratureSpec& q, const SeriesOptions& opts) {
  check_inputs(points, coeffs, cutoff);
  const int n = static_cast<int>(points.size());
  if (k < 1 || k >= n) throw DomainError("transposed_series: k must satisfy 1 <= k < n");
  const int ka = k - 1;
  const int kb = k;
  std::vector<ComplexFourVector> diffs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const FourVector eta = points[i].im - points[j].im;
      if (i == ka && j == kb) {
        if (!in_cone_v_plus(eta, 0.0)) throw DomainError("transposed_series: y_k - y_{k+1} must lie in V^+");
        diffs.push_back(points[j] - points[i]);
      } else {
        if (!in_cone_v_minus(eta, 0.0)) {
          throw DomainError("transposed_series: y_" + std::to_string(i + 1) + " - y_" + std::to_string(j + 1) +
                            " must lie in V^-");
        }
        diffs.push_back(points[i] - points[j]);
      }
    }
  // Certificate from the consecutive differences of the reordered configuration.
  std::vector<ComplexFourVector> swapped(points.begin(), points.end());
  std::swap(swapped[ka], swapped[kb]);
  const double l = certificate_length(swapped);
  const PairTable table = evaluate_pairs(diffs, m, q);
  return run_series(n, table, coeffs, cutoff, l, 0, opts);
}

SeriesValue connected_series(std::span<const ComplexFourVector> points, int k, const CoefficientSequence& coeffs,
                             int cutoff, Mass m, const QuadratureSpec& q, const SeriesOptions& opts) {
  check_inputs(points, coeffs, cutoff);
  const int n = static_cast<int>(points.size());
  if (k < 1 || k >= n) throw DomainError("connected_series: split k must satisfy 1 <= k < n");
  const double l = certificate_length(points);
  const PairTable table = evaluate_pairs(ordered_pair_differences(points), m, q);
  return run_series(n, table, coeffs, cutoff, l, k, opts);
}

double tail_remainder(double q, int E, int cutoff) {
  if (!(q >= 0.0) || !(q < 1.0)) throw DomainError("tail_remainder: q must lie in [0, 1)");
  if (E < 1) throw DomainError("tail_remainder: E must be positive");
  if (cutoff < 0) throw DomainError("tail_remainder: cutoff must be >= 0");
  if (q == 0.0) return 0.0;
  if (E == 1) return std::pow(q, cutoff + 1) / (1.0 - q);

  // t_m = C(m+E-1, E-1) q^m, starting at m = cutoff + 1; t_{m+1}/t_m = q (m+E)/(m+1),
  // which decreases in m, so t_m rho_m / (1 - rho_m) bounds what is left once rho_m < 1.
  long m = cutoff + 1;
  double t = std::exp(std::lgamma(m + E) - std::lgamma(E) - std::lgamma(m + 1.0) + m * std::log(q));
  CompensatedSum sum;
  constexpr long kMaxTerms = 200'000'000;
  for (long iter = 0; iter < kMaxTerms; ++iter, ++m) {
    sum.add(t);
    const double rho = q * static_cast<double>(m + E) / static_cast<double>(m + 1);
    if (rho < 1.0) {
      const double rest = t * rho / (1.0 - rho);
      if (rest <= 1e-17 * sum.value() || rest == 0.0) return sum.value() + rest;
    }
    t *= rho;
  }
  return std::numeric_limits<double>::infinity();
}

cplx two_point_closed_form(cplx zeta_sq, double g) {
  if (!(g > 0.0)) throw DomainError("two_point_closed_form: g must be positive");
  if (std::abs(zeta_sq) == 0.0) throw SingularityError("two_point_closed_form: zeta^2 = 0");
  const double l0_sq = g / (2.0 * M_PI * M_PI);
  const cplx u = 1.0 - (l0_sq * l0_sq) / (zeta_sq * zeta_sq);
  if (u.real() <= 0.0 && std::abs(u.imag()) <= 1e-15 * std::max(1.0, std::abs(u))) {
    throw SingularityError("two_point_closed_form: argument on the branch cut");
  }
  return 1.0 / std::sqrt(u);
}

GeneratingCheck generating_identity_check(cplx z, int cutoff) {
  if (cutoff < 0) throw DomainError("generating_identity_check: cutoff must be >= 0");
  CompensatedComplexSum sum;
  double c = 1.0;  // (2m)!/(m!)^2
  cplx zm = 1.0;
  for (int m = 0; m <= cutoff; ++m) {
    sum.add(c * zm);
    c *= 2.0 * (2.0 * m + 1.0) / (m + 1.0);
    zm *= z;
  }
  return {sum.value(), 1.0 / std::sqrt(1.0 - 4.0 * z)};
}

cplx determinant_closed_form(std::span<const ComplexFourVector> points, double g, Mass m, const QuadratureSpec& q) {
  const int n = static_cast<int>(points.size());
  if (n < 2) throw DomainError("determinant_closed_form: need at least two points");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cplx w = delta_plus(points[i] - points[j], m, q);
      A(i, j) -= 2.0 * g * w;
      A(j, i) -= 2.0 * g * w;
    }
  const cplx det = A.partialPivLu().determinant();
  return 1.0 / std::sqrt(det);
}

}  // namespace wfl
