#include <cmath>
#include <numeric>

#include "wfl/errors.hpp"
#include "wfl/wick.hpp"

namespace wfl {

ContractionMatrix::ContractionMatrix(int n) : n_(n), upper_(n >= 2 ? pair_count(n) : 0, 0) {
  if (n < 2) throw DomainError("contraction matrix needs n >= 2");
}

ContractionMatrix::ContractionMatrix(int n, std::vector<int> upper) : n_(n), upper_(std::move(upper)) {
  if (n < 2) throw DomainError("contraction matrix needs n >= 2");
  if (static_cast<int>(upper_.size()) != pair_count(n)) throw DomainError("upper triangle has wrong size");
  for (int r : upper_)
    if (r < 0) throw DomainError("contraction entries must be nonnegative");
}

int ContractionMatrix::at(int i, int j) const {
  if (i == j) return 0;
  if (i > j) std::swap(i, j);
  return upper_[pair_index(n_, i, j)];
}

int ContractionMatrix::degree() const { return std::accumulate(upper_.begin(), upper_.end(), 0); }

std::vector<int> ContractionMatrix::column_sums() const {
  std::vector<int> sums(n_, 0);
  int e = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j, ++e) {
      sums[i] += upper_[e];
      sums[j] += upper_[e];
    }
  return sums;
}

double ContractionMatrix::factorial() const {
  double f = 1.0;
  for (int r : upper_) f *= std::tgamma(r + 1.0);
  return f;
}

double big_D(const CoefficientSequence& coeffs, const ContractionMatrix& R) {
  double d = 1.0;
  for (int rj : R.column_sums()) {
    if (rj > coeffs.r_max()) throw DomainError("big_D: column sum exceeds stored coefficient range");
    d *= coeffs[rj];
  }
  return d;
}

double contraction_count(int n, int degree) {
  if (n < 2 || degree < 0) throw DomainError("contraction_count: need n >= 2, degree >= 0");
  const int E = ContractionMatrix::pair_count(n);
  // C(degree + E - 1, E - 1) by the multiplicative formula over the smaller side
  const int k = std::min(degree, E - 1);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (degree + E - 1 - k + i) / i;
  return std::round(c);
}

std::vector<ContractionMatrix> enumerate_contractions(int n, int degree) {
  if (n < 2 || degree < 0) throw DomainError("enumerate_contractions: need n >= 2, degree >= 0");
  const int E = ContractionMatrix::pair_count(n);
  std::vector<ContractionMatrix> out;
  std::vector<int> entries(E, 0);
  // Odometer over compositions of `degree` into E parts; the last part takes the remainder.
  auto recurse = [&](auto&& self, int e, int remaining) -> void {
    if (e == E - 1) {
      entries[e] = remaining;
      out.emplace_back(n, entries);
      return;
    }
    for (int r = 0; r <= remaining; ++r) {
      entries[e] = r;
      self(self, e + 1, remaining - r);
    }
    entries[e] = 0;
  };
  recurse(recurse, 0, degree);
  return out;
}

}  // namespace wfl
