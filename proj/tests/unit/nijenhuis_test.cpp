#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "ahv/catalog.hpp"
#include "ahv/coefficients.hpp"
#include "ahv/connection.hpp"
#include "ahv/errors.hpp"
#include "ahv/nijenhuis.hpp"
#include "support/support.hpp"

using namespace ahv;
using ahv::testing::filled;

namespace {

StructureCoefficients coefficients_at(const ManifoldPatch& patch, const AdaptedFrame& frame) {
  return structure_coefficients(alpha_beta(connection_coefficients(patch, frame)));
}

const Vector kSphereHalf = filled(6, 0.5 / std::sqrt(6.0));

}  // namespace

TEST(NijenhuisCoordinates, ConstantJVanishes) {
  std::mt19937_64 rng(11);
  const Matrix q = ahv::testing::random_skew(4, rng).exp();  // any rotation
  const Matrix j = q * standard_complex_structure(2) * q.transpose();
  const auto patch = ahv::testing::constant_patch(2, Matrix::Identity(4, 4), j);
  EXPECT_EQ(nijenhuis_coordinates(patch, Vector::Zero(4)).max_abs(), 0.0);
}

TEST(NijenhuisCoordinates, ConformalVanishes) {
  const auto entry = conformal_hermitian();
  EXPECT_EQ(nijenhuis_coordinates(entry.patch, filled(4, 1.0)).max_abs(), 0.0);
}

TEST(NijenhuisCoordinates, SphereOriginNonzeroAndSkew) {
  const auto s6 = nearly_kahler_s6();
  const NijenhuisTensor t = nijenhuis_tensor(s6.patch, adapt_frame(s6.patch, Vector::Zero(6)));
  EXPECT_GT(t.coord.max_abs(), 0.5);
  EXPECT_LT(symmetry_residuals(t, s6.patch, Vector::Zero(6)).antisymmetry, 1e-8);
}

TEST(NijenhuisFrame, ZeroCoefficients) {
  EXPECT_EQ(nijenhuis_frame(StructureCoefficients::zero(3)).max_abs(), 0.0);
}

TEST(NijenhuisFrame, SingleD121) {
  StructureCoefficients k = StructureCoefficients::zero(2);
  k.d(0, 1, 0) = 2.0;
  const Array3 nf = nijenhuis_frame(k);
  // frame(C, A, B) = theta_C(N(e_A, e_B))
  EXPECT_EQ(nf(0, 0, 1), 2.0);
  EXPECT_EQ(nf(0, 1, 0), -2.0);
  for (int c = 1; c < 4; ++c) EXPECT_EQ(nf(c, 0, 1), 0.0);
  // N(J e_1, e_2) = -J N(e_1, e_2) = -2 e_3
  EXPECT_EQ(nf(2, 2, 1), -2.0);
  // N(J e_1, J e_2) = -N(e_1, e_2)
  EXPECT_EQ(nf(0, 2, 3), -2.0);
  // 4 sum d^2 counts d_121 alone; the frame sum also sees the mirror slot N(e_2, e_1).
  EXPECT_EQ(norm_from_coefficients(k), 16.0);
  EXPECT_EQ(nijenhuis_norm(NijenhuisTensor{Vector::Zero(4), Array3({4, 4, 4}), nf}), 32.0);
}

TEST(NijenhuisFrame, AgreesWithCoordinateRoute) {
  const auto s6 = nearly_kahler_s6();
  for (const Vector& u : {Vector(Vector::Zero(6)), kSphereHalf}) {
    const AdaptedFrame frame = adapt_frame(s6.patch, u);
    const NijenhuisTensor t = nijenhuis_tensor(s6.patch, frame);
    const Array3 nf = nijenhuis_frame(coefficients_at(s6.patch, frame));
    EXPECT_LT(max_abs_diff(t.frame, nf), 1e-6 * t.frame.max_abs());
  }
}

TEST(NijenhuisNorm, IntegrableCatalogZero) {
  for (const char* id : {"flat:3", "conformal4", "torus:eps=0,freq=1"}) {
    const auto entry = catalog_entry(id);
    const Vector u = entry.patch.domain().center() + 0.1 * Vector::Ones(entry.patch.dim());
    const AdaptedFrame frame = adapt_frame(entry.patch, u);
    const NijenhuisTensor t = nijenhuis_tensor(entry.patch, frame);
    EXPECT_LT(nijenhuis_norm(t, coefficients_at(entry.patch, frame)), 1e-10) << id;
  }
}

TEST(NijenhuisNorm, SphereConstantAboveThreshold) {
  const auto s6 = nearly_kahler_s6();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(-0.3, 0.3);
  std::vector<double> values;
  for (int p = 0; p < 100; ++p) {
    Vector u(6);
    for (int k = 0; k < 6; ++k) u[k] = unit(rng);
    const AdaptedFrame frame = adapt_frame(s6.patch, u);
    values.push_back(nijenhuis_norm(nijenhuis_tensor(s6.patch, frame), coefficients_at(s6.patch, frame)));
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  EXPECT_LT((*hi - *lo) / *hi, 1e-5);
  EXPECT_GE(*lo, 64.0 / 5.0);
}

TEST(NijenhuisNorm, CrossPathMismatchThrows) {
  const auto s6 = nearly_kahler_s6();
  const AdaptedFrame frame = adapt_frame(s6.patch, Vector::Zero(6));
  const NijenhuisTensor t = nijenhuis_tensor(s6.patch, frame);
  StructureCoefficients k = coefficients_at(s6.patch, frame);
  k.c(0, 1, 2) += 0.5;
  k.c(0, 2, 1) -= 0.5;
  k.refresh_derived();
  try {
    nijenhuis_norm(t, k);
    FAIL() << "expected CrossPathMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CrossPathMismatch);
  }
}

TEST(NijenhuisNorm, FrameInvariant) {
  const auto s6 = nearly_kahler_s6();
  std::mt19937_64 rng(9);
  const AdaptedFrame base = adapt_frame(s6.patch, kSphereHalf);
  const double reference = nijenhuis_norm(nijenhuis_tensor(s6.patch, base));
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = unitary_from_generator(ahv::testing::random_skew(6, rng));
    const AdaptedFrame rotated = adapt_frame(s6.patch, kSphereHalf, base.basis * u);
    EXPECT_LT(relative_mismatch(nijenhuis_norm(nijenhuis_tensor(s6.patch, rotated)), reference), 1e-8);
  }
}

TEST(NijenhuisNorm, HomothetyScaling) {
  // Scaling g by c^2 scales |N|^2 by 1/c^2.
  const auto s6 = nearly_kahler_s6();
  const double c = 3.0;
  const ManifoldPatch scaled(
      3, s6.patch.domain(), [&](const Vector& u) { return Matrix(c * c * s6.patch.metric(u)); },
      [&](const Vector& u) { return s6.patch.j(u); }, "scaled");
  const double base = nijenhuis_norm(nijenhuis_tensor(s6.patch, adapt_frame(s6.patch, kSphereHalf)));
  const double big = nijenhuis_norm(nijenhuis_tensor(scaled, adapt_frame(scaled, kSphereHalf)));
  EXPECT_NEAR(big * c * c / base, 1.0, 1e-8);
}

TEST(Symmetry, ConstantJExact) {
  const auto flat = flat_kahler(2);
  const NijenhuisTensor t = nijenhuis_tensor(flat.patch, adapt_frame(flat.patch, Vector::Zero(4)));
  EXPECT_EQ(symmetry_residuals(t, flat.patch, Vector::Zero(4)).max(), 0.0);
}

TEST(Symmetry, SphereSatisfiesIdentities) {
  const auto s6 = nearly_kahler_s6();
  const NijenhuisTensor t = nijenhuis_tensor(s6.patch, adapt_frame(s6.patch, kSphereHalf));
  EXPECT_LT(symmetry_residuals(t, s6.patch, kSphereHalf).max(), 1e-7);
}

TEST(Symmetry, CorruptedJNegativeControl) {
  const auto s6 = nearly_kahler_s6();
  const ManifoldPatch noisy = ahv::testing::corrupted(s6.patch, 1e-3);
  const AdaptedFrame clean = adapt_frame(s6.patch, kSphereHalf);
  const NijenhuisTensor t = nijenhuis_tensor(noisy, clean);
  const SymmetryResiduals r = symmetry_residuals(t, noisy, kSphereHalf);
  EXPECT_GT(std::max(r.j_left, r.j_right), 1e-4);
  EXPECT_FALSE(check_invariants(noisy, kSphereHalf).ok());
}
