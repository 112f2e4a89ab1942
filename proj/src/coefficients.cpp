#include <cmath>
#include <string>

#include "wfl/errors.hpp"
#include "wfl/wick.hpp"

namespace wfl {

CoefficientSequence::CoefficientSequence(std::vector<double> d, double growth_C, double growth_g)
    : d_(std::move(d)), C_(growth_C), g_(growth_g) {
  if (d_.empty()) throw DomainError("coefficient sequence must contain d_0");
  if (!(C_ > 0.0) || !(g_ > 0.0)) throw DomainError("growth constants must be positive");
  // log form of d_r^2 <= C (2g)^r r!
  for (std::size_t r = 0; r < d_.size(); ++r) {
    if (!std::isfinite(d_[r])) throw DomainError("coefficient d_" + std::to_string(r) + " is not finite");
    if (d_[r] == 0.0) continue;
    const double lhs = 2.0 * std::log(std::abs(d_[r]));
    const double rhs = std::log(C_) + r * std::log(2.0 * g_) + std::lgamma(r + 1.0);
    if (lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs))) {
      throw DomainError("coefficient d_" + std::to_string(r) + " violates the growth certificate");
    }
  }
}

double CoefficientSequence::at(std::size_t r) const {
  if (r >= d_.size()) throw DomainError("coefficient index beyond r_max");
  return d_[r];
}

CoefficientSequence exp_phi2_coefficients(double g, int r_max) {
  if (!(g > 0.0)) throw DomainError("exp_phi2_coefficients: g must be positive");
  if (r_max < 0) throw DomainError("exp_phi2_coefficients: r_max must be >= 0");
  std::vector<double> d(static_cast<std::size_t>(r_max) + 1, 0.0);
  d[0] = 1.0;
  // d_{r+2} = d_r * g * (r+1)(r+2) / (r/2 + 1)
  for (int r = 0; r + 2 <= r_max; r += 2) {
    d[r + 2] = d[r] * g * (r + 1.0) * (r + 2.0) / (r / 2 + 1.0);
  }
  return CoefficientSequence(std::move(d), 1.0, g);
}

}  // namespace wfl
