#pragma once

// Exact 2x2 complex linear algebra for a single qubit.
//
// Hermitian operators are stored in the Pauli basis, M = c0*I + h.sigma, and
// unitary propagators as dense 2x2 matrices. Every exponential is the closed
// form for a 2x2 Hermitian generator; there is no series or Pade step.

#include <array>
#include <cmath>
#include <complex>

namespace qcl {

using cplx = std::complex<double>;

/// Real 3-vector in the Bloch frame (dimensionless components).
struct Bloch3 {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  static constexpr Bloch3 ex() { return {1.0, 0.0, 0.0}; }
  static constexpr Bloch3 ey() { return {0.0, 1.0, 0.0}; }
  static constexpr Bloch3 ez() { return {0.0, 0.0, 1.0}; }

  constexpr Bloch3 operator+(const Bloch3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Bloch3 operator-(const Bloch3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Bloch3 operator-() const { return {-x, -y, -z}; }
  constexpr Bloch3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Bloch3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr bool operator==(const Bloch3&) const = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

constexpr Bloch3 operator*(double s, const Bloch3& u) { return u * s; }

constexpr double dot(const Bloch3& u, const Bloch3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }

constexpr Bloch3 cross(const Bloch3& u, const Bloch3& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

/// z-component of u x v.
constexpr double cross_z(const Bloch3& u, const Bloch3& v) { return u.x * v.y - u.y * v.x; }

/// Returns u cos(angle) + (u x e_z) sin(angle). For angle > 0 this turns the
/// x-y projection clockwise when viewed from +z; the z-component is fixed.
Bloch3 rotate_about_z(const Bloch3& u, double angle);

/// Right-handed (counterclockwise) rotation of u about a unit axis.
Bloch3 rotate(const Bloch3& u, const Bloch3& unit_axis, double angle);

/// Signed angle in (-pi, pi] that turns the x-y projection of `from` onto the
/// x-y projection of `to`, counterclockwise positive.
double planar_angle(const Bloch3& from, const Bloch3& to);

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<cplx, 4> a{};

  static Mat2 identity() { return Mat2{{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}}}; }
  static Mat2 sigma_x() { return Mat2{{cplx{0.0}, cplx{1.0}, cplx{1.0}, cplx{0.0}}}; }
  static Mat2 sigma_y() { return Mat2{{cplx{0.0}, cplx{0.0, -1.0}, cplx{0.0, 1.0}, cplx{0.0}}}; }
  static Mat2 sigma_z() { return Mat2{{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{-1.0}}}; }

  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }

  Mat2 operator*(const Mat2& o) const {
    return Mat2{{a[0] * o.a[0] + a[1] * o.a[2], a[0] * o.a[1] + a[1] * o.a[3],
                 a[2] * o.a[0] + a[3] * o.a[2], a[2] * o.a[1] + a[3] * o.a[3]}};
  }
  Mat2 operator+(const Mat2& o) const {
    return Mat2{{a[0] + o.a[0], a[1] + o.a[1], a[2] + o.a[2], a[3] + o.a[3]}};
  }
  Mat2 operator-(const Mat2& o) const {
    return Mat2{{a[0] - o.a[0], a[1] - o.a[1], a[2] - o.a[2], a[3] - o.a[3]}};
  }
  Mat2 operator*(cplx s) const { return Mat2{{a[0] * s, a[1] * s, a[2] * s, a[3] * s}}; }

  Mat2 adjoint() const {
    return Mat2{{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}};
  }
  cplx trace() const { return a[0] + a[3]; }
  cplx det() const { return a[0] * a[3] - a[1] * a[2]; }
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Mat2& a, const Mat2& b);

/// Hermitian operator c0*I + h.sigma.
struct Hermitian2 {
  double c0{0.0};
  Bloch3 h{};

  static Hermitian2 identity() { return {1.0, {}}; }
  static Hermitian2 sigma_x() { return {0.0, Bloch3::ex()}; }
  static Hermitian2 sigma_y() { return {0.0, Bloch3::ey()}; }
  static Hermitian2 sigma_z() { return {0.0, Bloch3::ez()}; }

  Hermitian2 operator+(const Hermitian2& o) const { return {c0 + o.c0, h + o.h}; }
  Hermitian2 operator-(const Hermitian2& o) const { return {c0 - o.c0, h - o.h}; }
  Hermitian2 operator*(double s) const { return {c0 * s, h * s}; }
  bool operator==(const Hermitian2&) const = default;

  double trace() const { return 2.0 * c0; }
  Mat2 dense() const;

  double min_eigenvalue() const { return c0 - h.norm(); }
  double max_eigenvalue() const { return c0 + h.norm(); }
};

inline Hermitian2 operator*(double s, const Hermitian2& m) { return m * s; }

/// Tr(X Y) for Hermitian X, Y.
inline double trace_product(const Hermitian2& x, const Hermitian2& y) {
  return 2.0 * (x.c0 * y.c0 + dot(x.h, y.h));
}

/// Largest singular value, |c0| + |h|.
inline double spectral_norm(const Hermitian2& m) { return std::abs(m.c0) + m.h.norm(); }

/// Tolerance for accepting a dense matrix as Hermitian (absolute, per entry).
inline constexpr double kHermitianTolerance = 1e-12;

/// c0 = Tr(M)/2, h_k = Tr(M sigma_k)/2. Throws InvalidInput when M deviates
/// from Hermitian by more than kHermitianTolerance.
Hermitian2 pauli_decompose(const Mat2& m);

/// Element of U(2). Instances are produced by expi, products and adjoints of
/// other unitaries, or by a checked conversion from a dense matrix.
class Unitary2 {
 public:
  Unitary2() : m_(Mat2::identity()) {}

  /// Throws InvalidInput unless max|U^dagger U - I| <= tol.
  static Unitary2 from_matrix(const Mat2& m, double tol = 1e-10);

  const Mat2& matrix() const& { return m_; }
  Mat2 matrix() && { return m_; }

  Unitary2 operator*(const Unitary2& o) const { return Unitary2(m_ * o.m_); }
  Unitary2 adjoint() const { return Unitary2(m_.adjoint()); }

  /// U M U^dagger.
  Hermitian2 conjugate(const Hermitian2& m) const;

  /// max|U^dagger U - I|.
  double unitarity_defect() const;

 private:
  explicit Unitary2(const Mat2& m) : m_(m) {}
  friend Unitary2 expi(const Hermitian2& generator, double t);

  Mat2 m_;
};

/// exp(-i H t) in closed form:
/// e^{-i c0 t} (cos(|h|t) I - i sin(|h|t) (h.sigma)/|h|).
Unitary2 expi(const Hermitian2& generator, double t);

/// Bloch rotation induced by conjugation with expi(H, t): the Bloch vector of
/// U (u.sigma) U^dagger. Equals rotate(u, h/|h|, 2|h|t).
Bloch3 evolve_bloch(const Hermitian2& generator, double t, const Bloch3& u);

}  // namespace qcl
