#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qcl/error.hpp"
#include "qcl/su2.hpp"

using namespace qcl;
using std::numbers::pi;

namespace {

Hermitian2 random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), {n(rng), n(rng), n(rng)}};
}

void expect_bloch_near(const Bloch3& a, const Bloch3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

}  // namespace

TEST(PauliDecompose, BasisElements) {
  const Hermitian2 z = pauli_decompose(Mat2::sigma_z());
  EXPECT_EQ(z.c0, 0.0);
  EXPECT_EQ(z.h, Bloch3::ez());

  const Hermitian2 id = pauli_decompose(Mat2::identity());
  EXPECT_EQ(id.c0, 1.0);
  EXPECT_EQ(id.h, Bloch3{});
}

TEST(PauliDecompose, SpinDownAlongY) {
  // (1 - sigma_y) / 2
  const Mat2 rho = (Mat2::identity() - Mat2::sigma_y()) * cplx{0.5};
  const Hermitian2 h = pauli_decompose(rho);
  EXPECT_DOUBLE_EQ(h.c0, 0.5);
  expect_bloch_near(h.h, {0.0, -0.5, 0.0}, 0.0);
}

TEST(PauliDecompose, RejectsNonHermitianWithAsymmetry) {
  Mat2 m = Mat2::sigma_x();
  m(0, 1) = cplx{1.0 + 1e-6};
  try {
    pauli_decompose(m);
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("1e-06"), std::string::npos) << e.what();
  }
}

TEST(PauliDecompose, AcceptsAsymmetryWithinTolerance) {
  Mat2 m = Mat2::sigma_x();
  m(0, 1) += cplx{5e-13};
  EXPECT_NO_THROW(pauli_decompose(m));
}

TEST(Hermitian2, DenseRoundTripAndTrace) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Hermitian2 h = random_hermitian(rng);
    const Hermitian2 back = pauli_decompose(h.dense());
    EXPECT_LE(max_abs_diff(back.dense(), h.dense()), 1e-14);
    EXPECT_NEAR(h.dense().trace().real(), h.trace(), 1e-14);
  }
}

TEST(Expi, FullRotationIsMinusIdentity) {
  const Unitary2 u = expi(Hermitian2::sigma_z(), pi);
  EXPECT_LE(max_abs_diff(u.matrix(), Mat2::identity() * cplx{-1.0}), 1e-15);
}

TEST(Expi, ZeroTimeIsIdentity) {
  EXPECT_EQ(max_abs_diff(expi(Hermitian2::sigma_z(), 0.0).matrix(), Mat2::identity()), 0.0);
}

TEST(Expi, RabiOscillationMatchesFormula) {
  const Hermitian2 h = Hermitian2::sigma_z() + Hermitian2::sigma_x();
  for (double t : {0.1, 0.7, 1.3, 2.9, 5.0}) {
    const Mat2 u = expi(h, t).matrix();
    EXPECT_NEAR(std::norm(u(1, 0)), test::rabi_probability(1.0, 1.0, t), 1e-14) << t;
  }
}

TEST(Expi, ZeroGeneratorGivesPhaseOnly) {
  const Unitary2 u = expi(Hermitian2{2.0, {}}, 0.5);
  EXPECT_LE(max_abs_diff(u.matrix(), Mat2::identity() * std::polar(1.0, -1.0)), 1e-15);
}

TEST(Expi, UnitaryAndGroupLaw) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const Hermitian2 h = random_hermitian(rng);
    const double s = time(rng);
    const double t = time(rng);
    const Unitary2 us = expi(h, s);
    EXPECT_LE(us.unitarity_defect(), 1e-12);
    EXPECT_NEAR(std::abs(us.matrix().det()), 1.0, 1e-12);
    EXPECT_LE(max_abs_diff((us * expi(h, t)).matrix(), expi(h, s + t).matrix()), 1e-12);
  }
}

TEST(Unitary2, FromMatrixRejectsNonUnitary) {
  EXPECT_THROW(Unitary2::from_matrix(Mat2::identity() * cplx{1.1}), InvalidInput);
  EXPECT_NO_THROW(Unitary2::from_matrix(Mat2::sigma_y()));
}

TEST(CrossZ, Examples) {
  EXPECT_EQ(cross_z(Bloch3::ex(), Bloch3::ey()), 1.0);
  EXPECT_EQ(cross_z(Bloch3::ey(), Bloch3::ex()), -1.0);
  EXPECT_EQ(cross_z(Bloch3::ex(), Bloch3::ex()), 0.0);
}

TEST(RotateAboutZ, Examples) {
  EXPECT_EQ(rotate_about_z(Bloch3::ex(), 0.0), Bloch3::ex());
  expect_bloch_near(rotate_about_z(Bloch3::ex(), pi / 2), -Bloch3::ey(), 1e-16);
  for (double a : {0.3, 1.0, -2.0, 7.0}) {
    EXPECT_EQ(rotate_about_z(Bloch3::ez(), a), Bloch3::ez());
  }
}

TEST(RotateAboutZ, PreservesNormAndZ) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Bloch3 u{n(rng), n(rng), n(rng)};
    const Bloch3 w = rotate_about_z(u, 10.0 * n(rng));
    EXPECT_EQ(w.z, u.z);
    EXPECT_NEAR(w.norm(), u.norm(), 1e-14);
  }
}

TEST(ConjugationRotation, PinsSignConvention) {
  // Bloch vector of U rho U^dagger with U = expi(sigma_z, t) is rho's vector
  // turned counterclockwise by 2t, i.e. rotate_about_z with angle -2t.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Bloch3 r{n(rng), n(rng), n(rng)};
    const double t = 3.0 * n(rng);
    const Hermitian2 rho{0.5, r * 0.5};
    const Hermitian2 out = expi(Hermitian2::sigma_z(), t).conjugate(rho);
    expect_bloch_near(out.h * 2.0, rotate_about_z(r, -2.0 * t), 1e-13);
    expect_bloch_near(out.h * 2.0, evolve_bloch(Hermitian2::sigma_z(), t, r), 1e-13);
  }
}

TEST(EvolveBloch, MatchesDenseConjugationForGeneralGenerators) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Hermitian2 h = random_hermitian(rng);
    const Bloch3 u{n(rng), n(rng), n(rng)};
    const double t = n(rng);
    const Hermitian2 out = expi(h, t).conjugate(Hermitian2{0.0, u});
    expect_bloch_near(out.h, evolve_bloch(h, t, u), 1e-12);
  }
}

TEST(LagrangeIdentity, HoldsForPlanarVectors) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Bloch3 u{n(rng), n(rng), 0.0}, v{n(rng), n(rng), 0.0};
    const Bloch3 p{n(rng), n(rng), 0.0}, q{n(rng), n(rng), 0.0};
    const double lhs = dot(cross(u, v), cross(p, q));
    const double rhs = dot(u, p) * dot(v, q) - dot(u, q) * dot(v, p);
    EXPECT_NEAR(lhs, rhs, 1e-12);
  }
}

TEST(PlanarAngle, SignedCounterclockwise) {
  EXPECT_DOUBLE_EQ(planar_angle(Bloch3::ex(), Bloch3::ey()), pi / 2);
  EXPECT_DOUBLE_EQ(planar_angle(Bloch3::ey(), Bloch3::ex()), -pi / 2);
  EXPECT_DOUBLE_EQ(planar_angle(Bloch3::ex(), -Bloch3::ex()), pi);
  EXPECT_DOUBLE_EQ(planar_angle(Bloch3::ex(), Bloch3{-1.0, -0.0, 0.0}), pi);
}

TEST(SpectralNorm, ClosedForm) {
  EXPECT_DOUBLE_EQ(spectral_norm(Hermitian2::sigma_z() * 2.0), 2.0);
  EXPECT_DOUBLE_EQ(spectral_norm(Hermitian2{-3.0, {0.0, 0.0, 1.0}}), 4.0);
}
