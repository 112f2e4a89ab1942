#include "wfl/sampling.hpp"

#include <cmath>

namespace wfl {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::array<double, 3> random_direction(Rng& rng) {
  const double c = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * M_PI);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  return {s * std::cos(phi), s * std::sin(phi), c};
}

FourVector sample_past_timelike(Rng& rng, double l_min, double l_max, double max_rapidity) {
  const double tau = rng.uniform(l_min, l_max);
  const double eta = rng.uniform(0.0, max_rapidity);
  const auto n = random_direction(rng);
  const double sh = std::sinh(eta);
  return {-tau * std::cosh(eta), tau * sh * n[0], tau * sh * n[1], tau * sh * n[2]};
}

FourVector sample_box(Rng& rng, double scale) {
  FourVector v;
  for (std::size_t i = 0; i < 4; ++i) v[i] = rng.uniform(-scale, scale);
  return v;
}

LorentzTransform sample_lorentz(Rng& rng, double max_rapidity) {
  const auto axis = random_direction(rng);
  const double angle = rng.uniform(0.0, 2.0 * M_PI);
  const auto dir = random_direction(rng);
  const double eta = rng.uniform(0.0, max_rapidity);
  return LorentzTransform::boost_rapidity(dir, eta) * LorentzTransform::rotation(axis, angle);
}

}  // namespace wfl
