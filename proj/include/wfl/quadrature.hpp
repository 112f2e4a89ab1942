#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace wfl {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes/weights by Newton iteration on P_n; results are cached per order.
const GaussLegendreRule& gauss_legendre(int order);

/**
 * Neumaier-compensated accumulator. Summation order fixes the result bit-for-bit.
 */
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

/**
 * Composite Gauss-Legendre on [a, b] with `panels` equal panels of `order` nodes.
 * F maps double -> T, T is double or complex<double>.
 */
template <typename T, typename F>
T composite_gauss_legendre(F&& f, double a, double b, int panels, int order) {
  const auto& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  T acc{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    T part{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      part += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    }
    acc += 0.5 * h * part;
  }
  return acc;
}

}  // namespace wfl
