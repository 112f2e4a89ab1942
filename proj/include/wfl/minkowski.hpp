#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace wfl {

using cplx = std::complex<double>;

/// Absolute tolerance used by the geometric predicates unless overridden.
inline constexpr double kGeometryTolerance = 1e-10;

/**
 * Real Minkowski four-vector, components (t, x1, x2, x3), metric (+,-,-,-).
 */
struct FourVector {
  std::array<double, 4> c{};

  constexpr FourVector() = default;
  constexpr FourVector(double t, double x, double y, double z) : c{t, x, y, z} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr double time() const { return c[0]; }
  double spatial_norm() const;

  FourVector& operator+=(const FourVector& o);
  FourVector& operator-=(const FourVector& o);
  FourVector& operator*=(double s);

  friend bool operator==(const FourVector&, const FourVector&) = default;
};

FourVector operator+(FourVector a, const FourVector& b);
FourVector operator-(FourVector a, const FourVector& b);
FourVector operator-(FourVector a);
FourVector operator*(double s, FourVector a);
FourVector operator*(FourVector a, double s);

/// Minkowski product a.b = a0 b0 - a1 b1 - a2 b2 - a3 b3.
double dot(const FourVector& a, const FourVector& b);
double minkowski_square(const FourVector& v);
/// |v| = max_i |v_i|; the norm used for every strip and tube predicate.
double max_norm(const FourVector& v);

/**
 * Point of complexified Minkowski space z = x + i y.
 */
struct ComplexFourVector {
  FourVector re;
  FourVector im;

  constexpr ComplexFourVector() = default;
  constexpr ComplexFourVector(const FourVector& r, const FourVector& i) : re(r), im(i) {}
  static ComplexFourVector real(const FourVector& r) { return {r, FourVector{}}; }
  static ComplexFourVector from_components(const std::array<cplx, 4>& z);

  cplx operator[](std::size_t i) const { return {re[i], im[i]}; }
  void set(std::size_t i, cplx v) {
    re[i] = v.real();
    im[i] = v.imag();
  }

  ComplexFourVector conj() const { return {re, -im}; }

  ComplexFourVector& operator+=(const ComplexFourVector& o);
  ComplexFourVector& operator-=(const ComplexFourVector& o);

  friend bool operator==(const ComplexFourVector&, const ComplexFourVector&) = default;
};

ComplexFourVector operator+(ComplexFourVector a, const ComplexFourVector& b);
ComplexFourVector operator-(ComplexFourVector a, const ComplexFourVector& b);
ComplexFourVector operator-(const ComplexFourVector& a);
ComplexFourVector operator*(double s, const ComplexFourVector& a);
ComplexFourVector operator*(cplx s, const ComplexFourVector& a);

cplx minkowski_square(const ComplexFourVector& v);
double max_norm(const ComplexFourVector& v);

/// y in V^-_l: y^2 > l^2 and y^0 < 0, with both inequalities required to hold by `tol`.
bool in_cone_v_minus(const FourVector& y, double l, double tol = kGeometryTolerance);
bool in_cone_v_plus(const FourVector& y, double l, double tol = kGeometryTolerance);
bool is_spacelike(const FourVector& v, double tol = kGeometryTolerance);

/**
 * Real Lorentz transformation stored as a 4x4 matrix acting on column vectors.
 */
class LorentzTransform {
 public:
  using Matrix = std::array<std::array<double, 4>, 4>;

  LorentzTransform();  // identity
  explicit LorentzTransform(const Matrix& m) : m_(m) {}

  static LorentzTransform identity() { return {}; }
  /// Pure boost with three-velocity beta, |beta| < 1.
  static LorentzTransform boost(const std::array<double, 3>& beta);
  /// Pure boost of the given rapidity along a (not necessarily normalized) direction.
  static LorentzTransform boost_rapidity(const std::array<double, 3>& direction, double rapidity);
  /// Rotation by `angle` about `axis` (right-handed).
  static LorentzTransform rotation(const std::array<double, 3>& axis, double angle);
  /// Rotation taking the spatial unit vector along `from` to the one along `to`.
  static LorentzTransform rotation_taking(const std::array<double, 3>& from,
                                          const std::array<double, 3>& to);

  const Matrix& matrix() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }

  FourVector apply(const FourVector& v) const;
  ComplexFourVector apply(const ComplexFourVector& v) const;
  FourVector operator*(const FourVector& v) const { return apply(v); }
  ComplexFourVector operator*(const ComplexFourVector& v) const { return apply(v); }
  LorentzTransform operator*(const LorentzTransform& o) const;

  /// max |(L^T g L - g)_{ij}|
  double metric_defect() const;
  double determinant() const;
  bool is_proper_orthochronous(double tol = 1e-12) const;

 private:
  Matrix m_;
};

/**
 * Boost B with B*y = (-sqrt(y^2), 0, 0, 0) for past-timelike y.
 * Throws DomainError otherwise.
 */
LorentzTransform rest_frame_boost(const FourVector& y, double tol = kGeometryTolerance);

/// (z0, z1, z2, z3) -> (i z1, i z0, z2, z3); an element of the complex Lorentz group.
ComplexFourVector complex_lorentz_rotation(const ComplexFourVector& z);

struct DifferenceCoords {
  ComplexFourVector center;              // X = mean of the points
  std::vector<ComplexFourVector> diffs;  // xi_j = x_j - x_{j+1}
};

DifferenceCoords to_difference_coords(std::span<const ComplexFourVector> points);
std::vector<ComplexFourVector> from_difference_coords(const ComplexFourVector& center,
                                                      std::span<const ComplexFourVector> diffs);

/**
 * Sampled test that every convex combination of the xi_j is spacelike:
 * simplex vertices, pairwise midpoints and a fixed 10-point interior lattice.
 * A sufficient-sample predicate; spacelike vectors do not form a convex set.
 */
bool jost_spacelike_config(std::span<const FourVector> diffs, double tol = kGeometryTolerance);

}  // namespace wfl
