#include <algorithm>
#include <cmath>

#include "wfl/errors.hpp"
#include "wfl/pairing.hpp"
#include "wfl/sampling.hpp"

namespace wfl {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

class NormSearch {
 public:
  NormSearch(const TestFunction& f, const StripNorm& norm)
      : f_(f), d_(f.dimension()), l_(norm.l), N_(norm.N), R_(f.search_radius()), z_(d_) {}

  // params: x_0, y_0, x_1, y_1, ...
  double objective(const std::vector<double>& v) {
    ++evals_;
    double xmax = 0.0;
    for (int k = 0; k < d_; ++k) {
      z_[k] = {v[2 * k], v[2 * k + 1]};
      xmax = std::max(xmax, std::abs(v[2 * k]));
    }
    return std::pow(1.0 + xmax, N_) * std::abs(f_(z_));
  }

  double lo(int c) const { return c % 2 == 0 ? -R_ : -l_; }
  double hi(int c) const { return c % 2 == 0 ? R_ : l_; }
  bool active(int c) const { return c % 2 == 0 || l_ > 0.0; }

  // Maximizes along coordinate c in place; returns the new objective value.
  double line_search(std::vector<double>& v, int c, double current, int grid_points) {
    const double a = lo(c);
    const double b = hi(c);
    const double step = (b - a) / (grid_points - 1);
    double best = current;
    double best_x = v[c];
    int best_i = -1;
    for (int i = 0; i < grid_points; ++i) {
      v[c] = a + i * step;
      const double val = objective(v);
      if (val > best) {
        best = val;
        best_x = v[c];
        best_i = i;
      }
    }
    // golden section around the best grid point (or around the incumbent)
    const double centre = best_i >= 0 ? a + best_i * step : best_x;
    double left = std::max(a, centre - step);
    double right = std::min(b, centre + step);
    double x1 = right - kInvPhi * (right - left);
    double x2 = left + kInvPhi * (right - left);
    v[c] = x1;
    double f1 = objective(v);
    v[c] = x2;
    double f2 = objective(v);
    while (right - left > 1e-10 * (b - a)) {
      if (f1 < f2) {
        left = x1;
        x1 = x2;
        f1 = f2;
        x2 = left + kInvPhi * (right - left);
        v[c] = x2;
        f2 = objective(v);
      } else {
        right = x2;
        x2 = x1;
        f2 = f1;
        x1 = right - kInvPhi * (right - left);
        v[c] = x1;
        f1 = objective(v);
      }
    }
    if (f1 > best) {
      best = f1;
      best_x = x1;
    }
    if (f2 > best) {
      best = f2;
      best_x = x2;
    }
    v[c] = best_x;
    return best;
  }

  int dim() const { return d_; }
  double l() const { return l_; }
  double radius() const { return R_; }
  std::uint64_t evaluations() const { return evals_; }

 private:
  const TestFunction& f_;
  int d_;
  double l_;
  int N_;
  double R_;
  std::vector<cplx> z_;
  std::uint64_t evals_ = 0;
};

}  // namespace

StripNormValue strip_norm(const TestFunction& f, const StripNorm& norm, const StripNormOptions& opts) {
  if (!(norm.l >= 0.0)) throw DomainError("strip_norm: l must be nonnegative");
  if (norm.N < 0) throw DomainError("strip_norm: N must be nonnegative");
  if (opts.grid_points < 3 || opts.max_sweeps < 1 || opts.ascent_starts < 1) {
    throw DomainError("strip_norm: invalid search options");
  }
  NormSearch search(f, norm);
  const int d = search.dim();
  const int P = 2 * d;

  struct Candidate {
    double value;
    std::vector<double> v;
  };
  std::vector<Candidate> pool;
  auto consider = [&](std::vector<double> v) {
    const double val = search.objective(v);
    pool.push_back({val, std::move(v)});
  };

  // x = 0 with y on the corners of the strip, and y = 0
  consider(std::vector<double>(P, 0.0));
  if (norm.l > 0.0) {
    const int corner_bits = std::min(d, 10);
    for (std::uint32_t mask = 0; mask < (1u << corner_bits); ++mask) {
      std::vector<double> v(P, 0.0);
      for (int k = 0; k < d; ++k) {
        const bool up = k < corner_bits ? ((mask >> k) & 1u) : ((mask >> (k % corner_bits)) & 1u);
        v[2 * k + 1] = up ? norm.l : -norm.l;
      }
      consider(std::move(v));
    }
  }
  Rng rng(opts.seed, static_cast<std::uint64_t>(d) * 1000 + norm.N);
  for (int s = 0; s < opts.random_starts; ++s) {
    std::vector<double> v(P, 0.0);
    for (int c = 0; c < P; ++c) v[c] = search.active(c) ? rng.uniform(search.lo(c), search.hi(c)) : 0.0;
    consider(std::move(v));
  }
  std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) { return a.value > b.value; });

  StripNormValue out;
  const int starts = std::min<int>(opts.ascent_starts, static_cast<int>(pool.size()));
  for (int s = 0; s < starts; ++s) {
    std::vector<double> v = pool[s].v;
    double val = pool[s].value;
    double gain = 0.0;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
      const double before = val;
      for (int c = 0; c < P; ++c) {
        if (search.active(c)) val = search.line_search(v, c, val, opts.grid_points);
      }
      gain = before > 0.0 ? (val - before) / val : (val > 0.0 ? 1.0 : 0.0);
      if (gain < 1e-12) break;
    }
    if (val > out.value || s == 0) {
      out.value = val;
      out.slack = gain;
      out.argmax.resize(d);
      for (int k = 0; k < d; ++k) out.argmax[k] = {v[2 * k], v[2 * k + 1]};
    }
  }
  out.evaluations = search.evaluations();
  return out;
}

StripNormValue strip_norm(const AnalyticTestFunction& f, const StripNorm& norm, const StripNormOptions& opts) {
  const TestFunction tf(
      f.dimension(), [&f](std::span<const cplx> z) { return f(z); }, f.search_radius(norm.l));
  return strip_norm(tf, norm, opts);
}

}  // namespace wfl
