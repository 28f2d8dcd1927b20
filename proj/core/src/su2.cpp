#include "qcl/su2.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "qcl/error.hpp"

namespace qcl {

Bloch3 rotate_about_z(const Bloch3& u, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  // u x e_z = (u_y, -u_x, 0)
  return {u.x * c + u.y * s, u.y * c - u.x * s, u.z};
}

Bloch3 rotate(const Bloch3& u, const Bloch3& n, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return u * c + cross(n, u) * s + n * (dot(n, u) * (1.0 - c));
}

double planar_angle(const Bloch3& from, const Bloch3& to) {
  const double a = std::atan2(cross_z(from, to), from.x * to.x + from.y * to.y);
  return a <= -std::numbers::pi ? std::numbers::pi : a;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < 4; ++k) m = std::max(m, std::abs(a.a[k] - b.a[k]));
  return m;
}

Mat2 Hermitian2::dense() const {
  return Mat2{{cplx{c0 + h.z, 0.0}, cplx{h.x, -h.y}, cplx{h.x, h.y}, cplx{c0 - h.z, 0.0}}};
}

Hermitian2 pauli_decompose(const Mat2& m) {
  const double asym = max_abs_diff(m, m.adjoint());
  if (!(asym <= kHermitianTolerance)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: max |M - M^dagger| = " << asym;
    throw InvalidInput(msg.str());
  }
  // Average the off-diagonal pair so a tolerated asymmetry does not bias h.
  const cplx off = 0.5 * (m(1, 0) + std::conj(m(0, 1)));
  Hermitian2 out;
  out.c0 = 0.5 * (m(0, 0).real() + m(1, 1).real());
  out.h = {off.real(), off.imag(), 0.5 * (m(0, 0).real() - m(1, 1).real())};
  return out;
}

Unitary2 Unitary2::from_matrix(const Mat2& m, double tol) {
  const double defect = max_abs_diff(m.adjoint() * m, Mat2::identity());
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max |U^dagger U - I| = " << defect;
    throw InvalidInput(msg.str());
  }
  return Unitary2(m);
}

Hermitian2 Unitary2::conjugate(const Hermitian2& m) const {
  return pauli_decompose(m_ * m.dense() * m_.adjoint());
}

double Unitary2::unitarity_defect() const {
  return max_abs_diff(m_.adjoint() * m_, Mat2::identity());
}

Unitary2 expi(const Hermitian2& generator, double t) {
  const cplx phase = std::polar(1.0, -generator.c0 * t);
  const double norm = generator.h.norm();
  if (norm < 1e-300) return Unitary2(Mat2::identity() * phase);

  const Bloch3 n = generator.h / norm;
  const double c = std::cos(norm * t);
  const double s = std::sin(norm * t);
  Mat2 u{{cplx{c, -s * n.z}, cplx{-s * n.y, -s * n.x}, cplx{s * n.y, -s * n.x}, cplx{c, s * n.z}}};
  return Unitary2(u * phase);
}

Bloch3 evolve_bloch(const Hermitian2& generator, double t, const Bloch3& u) {
  const double norm = generator.h.norm();
  if (norm < 1e-300) return u;
  return rotate(u, generator.h / norm, 2.0 * norm * t);
}

}  // namespace qcl
