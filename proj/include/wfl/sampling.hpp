#pragma once

#include <cstdint>
#include <random>

#include "wfl/minkowski.hpp"

namespace wfl {

/// splitmix64 finalizer; decorrelates (seed, index) pairs.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/**
 * mt19937_64 with a hand-written uniform map, so draws are identical across
 * standard libraries. One Rng per sample index keeps parallel loops reproducible.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t index = 0) : gen_(mix_seed(seed, index)) {}

  std::uint64_t next() { return gen_(); }
  /// [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }

 private:
  std::mt19937_64 gen_;
};

/// Uniform direction on the unit 2-sphere.
std::array<double, 3> random_direction(Rng& rng);

/// y in V^- with sqrt(y^2) in [l_min, l_max] and rapidity of its rest frame below max_rapidity.
FourVector sample_past_timelike(Rng& rng, double l_min, double l_max, double max_rapidity);

/// Components uniform in [-scale, scale].
FourVector sample_box(Rng& rng, double scale);

/// Rotation (random axis and angle) followed by a boost of rapidity below max_rapidity.
LorentzTransform sample_lorentz(Rng& rng, double max_rapidity);

}  // namespace wfl
