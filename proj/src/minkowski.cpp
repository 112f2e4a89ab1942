#include "wfl/minkowski.hpp"

#include <cmath>
#include <string>

#include "wfl/errors.hpp"

namespace wfl {

namespace {

using Vec3 = std::array<double, 3>;

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& v) {
  const double n = norm3(v);
  if (n == 0.0) throw DomainError("zero-length direction");
  return {v[0] / n, v[1] / n, v[2] / n};
}

}  // namespace

// ---- FourVector ----------------------------------------------------------

double FourVector::spatial_norm() const { return std::sqrt(c[1] * c[1] + c[2] * c[2] + c[3] * c[3]); }

FourVector& FourVector::operator+=(const FourVector& o) {
  for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
  return *this;
}

FourVector& FourVector::operator-=(const FourVector& o) {
  for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
  return *this;
}

FourVector& FourVector::operator*=(double s) {
  for (auto& v : c) v *= s;
  return *this;
}

FourVector operator+(FourVector a, const FourVector& b) { return a += b; }
FourVector operator-(FourVector a, const FourVector& b) { return a -= b; }
FourVector operator-(FourVector a) { return a *= -1.0; }
FourVector operator*(double s, FourVector a) { return a *= s; }
FourVector operator*(FourVector a, double s) { return a *= s; }

double dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

double minkowski_square(const FourVector& v) { return dot(v, v); }

double max_norm(const FourVector& v) {
  double m = 0.0;
  for (double x : v.c) m = std::max(m, std::abs(x));
  return m;
}

// ---- ComplexFourVector ---------------------------------------------------

ComplexFourVector ComplexFourVector::from_components(const std::array<cplx, 4>& z) {
  ComplexFourVector v;
  for (std::size_t i = 0; i < 4; ++i) v.set(i, z[i]);
  return v;
}

ComplexFourVector& ComplexFourVector::operator+=(const ComplexFourVector& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexFourVector& ComplexFourVector::operator-=(const ComplexFourVector& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexFourVector operator+(ComplexFourVector a, const ComplexFourVector& b) { return a += b; }
ComplexFourVector operator-(ComplexFourVector a, const ComplexFourVector& b) { return a -= b; }
ComplexFourVector operator-(const ComplexFourVector& a) { return {-a.re, -a.im}; }
ComplexFourVector operator*(double s, const ComplexFourVector& a) { return {s * a.re, s * a.im}; }

ComplexFourVector operator*(cplx s, const ComplexFourVector& a) {
  ComplexFourVector r;
  for (std::size_t i = 0; i < 4; ++i) r.set(i, s * a[i]);
  return r;
}

cplx minkowski_square(const ComplexFourVector& v) {
  // (x + iy)^2 = x^2 - y^2 + 2i x.y, evaluated componentwise to keep it symmetric.
  const double re = dot(v.re, v.re) - dot(v.im, v.im);
  const double im = 2.0 * dot(v.re, v.im);
  return {re, im};
}

double max_norm(const ComplexFourVector& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

bool in_cone_v_minus(const FourVector& y, double l, double tol) {
  return y[0] < -tol && minkowski_square(y) - l * l > tol;
}

bool in_cone_v_plus(const FourVector& y, double l, double tol) { return in_cone_v_minus(-y, l, tol); }

bool is_spacelike(const FourVector& v, double tol) { return minkowski_square(v) < -tol; }

// ---- LorentzTransform ----------------------------------------------------

LorentzTransform::LorentzTransform() : m_{} {
  for (std::size_t i = 0; i < 4; ++i) m_[i][i] = 1.0;
}

LorentzTransform LorentzTransform::boost(const Vec3& beta) {
  const double b2 = beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2];
  if (b2 >= 1.0) throw DomainError("boost velocity must satisfy |beta| < 1");
  Matrix m{};
  if (b2 == 0.0) return {};
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  m[0][0] = gamma;
  for (std::size_t i = 0; i < 3; ++i) {
    m[0][i + 1] = -gamma * beta[i];
    m[i + 1][0] = -gamma * beta[i];
    for (std::size_t j = 0; j < 3; ++j) {
      m[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * beta[i] * beta[j] / b2;
    }
  }
  return LorentzTransform(m);
}

LorentzTransform LorentzTransform::boost_rapidity(const Vec3& direction, double rapidity) {
  if (rapidity == 0.0) return {};
  const Vec3 n = normalized(direction);
  const double gamma = std::cosh(rapidity);
  const double gb = std::sinh(rapidity);
  Matrix m{};
  m[0][0] = gamma;
  for (std::size_t i = 0; i < 3; ++i) {
    m[0][i + 1] = -gb * n[i];
    m[i + 1][0] = -gb * n[i];
    for (std::size_t j = 0; j < 3; ++j) {
      m[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * n[i] * n[j];
    }
  }
  return LorentzTransform(m);
}

LorentzTransform LorentzTransform::rotation(const Vec3& axis, double angle) {
  const Vec3 k = normalized(axis);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix m{};
  m[0][0] = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      m[i + 1][j + 1] = (i == j ? c : 0.0) + (1.0 - c) * k[i] * k[j];
    }
  }
  // cross-product part: R v += s (k x v)
  m[1][2] += -s * k[2];
  m[1][3] += s * k[1];
  m[2][1] += s * k[2];
  m[2][3] += -s * k[0];
  m[3][1] += -s * k[1];
  m[3][2] += s * k[0];
  return LorentzTransform(m);
}

LorentzTransform LorentzTransform::rotation_taking(const Vec3& from, const Vec3& to) {
  const Vec3 a = normalized(from);
  const Vec3 b = normalized(to);
  const Vec3 axis = cross(a, b);
  const double s = norm3(axis);
  const double c = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  if (s < 1e-15) {
    if (c > 0.0) return {};
    // antiparallel: half turn about any axis orthogonal to a
    Vec3 trial = std::abs(a[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    return rotation(cross(a, trial), M_PI);
  }
  return rotation(axis, std::atan2(s, c));
}

FourVector LorentzTransform::apply(const FourVector& v) const {
  FourVector r;
  for (std::size_t i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < 4; ++j) acc += m_[i][j] * v[j];
    r[i] = acc;
  }
  return r;
}

ComplexFourVector LorentzTransform::apply(const ComplexFourVector& v) const {
  return {apply(v.re), apply(v.im)};
}

LorentzTransform LorentzTransform::operator*(const LorentzTransform& o) const {
  Matrix r{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += m_[i][k] * o.m_[k][j];
      r[i][j] = acc;
    }
  return LorentzTransform(r);
}

double LorentzTransform::metric_defect() const {
  constexpr std::array<double, 4> g{1.0, -1.0, -1.0, -1.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += m_[k][i] * g[k] * m_[k][j];
      worst = std::max(worst, std::abs(acc - (i == j ? g[i] : 0.0)));
    }
  return worst;
}

double LorentzTransform::determinant() const {
  // Laplace expansion along the first row with 3x3 minors.
  auto minor3 = [this](std::size_t skip_col) {
    std::array<std::size_t, 3> cols{};
    std::size_t k = 0;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != skip_col) cols[k++] = j;
    const auto& a = m_;
    return a[1][cols[0]] * (a[2][cols[1]] * a[3][cols[2]] - a[2][cols[2]] * a[3][cols[1]]) -
           a[1][cols[1]] * (a[2][cols[0]] * a[3][cols[2]] - a[2][cols[2]] * a[3][cols[0]]) +
           a[1][cols[2]] * (a[2][cols[0]] * a[3][cols[1]] - a[2][cols[1]] * a[3][cols[0]]);
  };
  double det = 0.0;
  for (std::size_t j = 0; j < 4; ++j) det += (j % 2 == 0 ? 1.0 : -1.0) * m_[0][j] * minor3(j);
  return det;
}

bool LorentzTransform::is_proper_orthochronous(double tol) const {
  const double scale = std::max(1.0, m_[0][0] * m_[0][0]);
  return metric_defect() <= tol * scale && m_[0][0] >= 1.0 - tol &&
         std::abs(determinant() - 1.0) <= tol * scale * scale;
}

LorentzTransform rest_frame_boost(const FourVector& y, double tol) {
  if (!in_cone_v_minus(y, 0.0, tol)) {
    throw DomainError("rest_frame_boost: vector is not past timelike");
  }
  const Vec3 beta{y[1] / y[0], y[2] / y[0], y[3] / y[0]};
  return LorentzTransform::boost(beta);
}

ComplexFourVector complex_lorentz_rotation(const ComplexFourVector& z) {
  constexpr cplx i{0.0, 1.0};
  return ComplexFourVector::from_components({i * z[1], i * z[0], z[2], z[3]});
}

DifferenceCoords to_difference_coords(std::span<const ComplexFourVector> points) {
  const std::size_t n = points.size();
  if (n < 2) throw DomainError("to_difference_coords: need at least two points");
  DifferenceCoords out;
  for (const auto& p : points) out.center += p;
  out.center = (1.0 / static_cast<double>(n)) * out.center;
  out.diffs.reserve(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) out.diffs.push_back(points[j] - points[j + 1]);
  return out;
}

std::vector<ComplexFourVector> from_difference_coords(const ComplexFourVector& center,
                                                      std::span<const ComplexFourVector> diffs) {
  const std::size_t n = diffs.size() + 1;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<ComplexFourVector> x(n, center);
  // x_j = X - (1/n) sum_{m<j} m xi_m + (1/n) sum_{m=1}^{n-j} m xi_{n-m}   (1-based)
  for (std::size_t j = 1; j <= n; ++j) {
    ComplexFourVector acc;
    for (std::size_t m = 1; m < j; ++m) acc -= static_cast<double>(m) * diffs[m - 1];
    for (std::size_t m = 1; m <= n - j; ++m) acc += static_cast<double>(m) * diffs[n - m - 1];
    x[j - 1] += inv_n * acc;
  }
  return x;
}

bool jost_spacelike_config(std::span<const FourVector> diffs, double tol) {
  const std::size_t k = diffs.size();
  if (k == 0) return false;
  auto combo_spacelike = [&](const std::vector<double>& w) {
    FourVector v;
    for (std::size_t j = 0; j < k; ++j) v += w[j] * diffs[j];
    return is_spacelike(v, tol);
  };
  std::vector<double> w(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    std::fill(w.begin(), w.end(), 0.0);
    w[a] = 1.0;
    if (!combo_spacelike(w)) return false;
    for (std::size_t b = a + 1; b < k; ++b) {
      std::fill(w.begin(), w.end(), 0.0);
      w[a] = w[b] = 0.5;
      if (!combo_spacelike(w)) return false;
    }
  }
  // Interior points: fixed low-discrepancy weights, normalized onto the simplex.
  constexpr std::array<double, 8> irr{0.41421356237, 0.73205080757, 0.23606797750, 0.64575131106,
                                      0.31662479036, 0.60555127546, 0.12310562562, 0.35889894354};
  for (int i = 1; i <= 10; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double frac = std::fmod(0.5 + i * irr[j % irr.size()] + 0.137 * static_cast<double>(j / irr.size()), 1.0);
      w[j] = 0.05 + frac;
      total += w[j];
    }
    for (auto& x : w) x /= total;
    if (!combo_spacelike(w)) return false;
  }
  return true;
}

}  // namespace wfl
