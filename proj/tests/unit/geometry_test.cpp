#include <gtest/gtest.h>

#include "ahv/catalog.hpp"
#include "ahv/errors.hpp"
#include "ahv/geometry.hpp"
#include "support/support.hpp"

using namespace ahv;
using ahv::testing::constant_patch;
using ahv::testing::filled;

namespace {

ManifoldPatch exponential_line() {
  // g = e^{2u} on a 2-dimensional patch.
  return ManifoldPatch(
      1, Box::cube(2, -1.0, 1.0),
      [](const Vector& u) { return Matrix(std::exp(2.0 * u[0]) * Matrix::Identity(2, 2)); },
      [](const Vector&) { return standard_complex_structure(1); }, "exp");
}

}  // namespace

TEST(AdaptFrame, FlatOriginIsIdentity) {
  const auto flat = flat_kahler(2);
  const AdaptedFrame frame = adapt_frame(flat.patch, Vector::Zero(4));
  EXPECT_LT((frame.basis - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(AdaptFrame, HomotheticMetricHalvesFrame) {
  const auto patch = ahv::testing::scaled_flat(2, 2.0);
  const AdaptedFrame frame = adapt_frame(patch, Vector::Zero(4));
  EXPECT_LT((frame.basis - 0.5 * Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(AdaptFrame, ConformalPatchOrthonormal) {
  const auto entry = conformal_hermitian();
  const Vector u = filled(4, 1.0);  // |u| = 2
  const AdaptedFrame frame = adapt_frame(entry.patch, u);
  EXPECT_LT((frame.basis - 2.0 * Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(orthonormality_residual(frame, entry.patch.metric(u)), 1e-12);
  EXPECT_LT(adaptation_residual(frame, entry.patch.j(u)), 1e-12);
}

TEST(AdaptFrame, IdempotentOnAdaptedSeed) {
  const auto entry = nearly_kahler_s6();
  const Vector u = filled(6, 0.1);
  const AdaptedFrame once = adapt_frame(entry.patch, u);
  const AdaptedFrame twice = adapt_frame(entry.patch, u, once.basis);
  EXPECT_LT((once.basis - twice.basis).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(AdaptFrame, CovariantUnderUnitarySeed) {
  std::mt19937_64 rng(7);
  const auto entry = nearly_kahler_s6();
  const Vector u = filled(6, -0.12);
  const AdaptedFrame base = adapt_frame(entry.patch, u);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix unitary = unitary_from_generator(ahv::testing::random_skew(6, rng));
    const AdaptedFrame rotated = adapt_frame(entry.patch, u, base.basis * unitary);
    EXPECT_LT((rotated.basis - base.basis * unitary).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(AdaptFrame, SkipsDegenerateSeedColumn) {
  const auto flat = flat_kahler(2);
  Matrix seed = Matrix::Identity(4, 4);
  seed.col(2) = seed.col(0);  // J e_1 spans e_3 already, so column 2 is redundant
  seed.col(0) = Vector::Zero(4);
  const AdaptedFrame frame = adapt_frame(flat.patch, Vector::Zero(4), seed);
  EXPECT_EQ(frame.pivots.front(), 1);
  EXPECT_LT(orthonormality_residual(frame, Matrix::Identity(4, 4)), 1e-14);
}

TEST(AdaptFrame, ExhaustedSeedThrows) {
  const auto flat = flat_kahler(2);
  Matrix seed = Matrix::Zero(4, 4);
  seed(0, 0) = 1.0;
  try {
    adapt_frame(flat.patch, Vector::Zero(4), seed);
    FAIL() << "expected DegeneratePivot";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegeneratePivot);
  }
}

TEST(AdaptFrame, IncompatibleJThrows) {
  Matrix j = standard_complex_structure(2);
  j(0, 1) = 0.3;
  const auto patch = constant_patch(2, Matrix::Identity(4, 4), j);
  try {
    adapt_frame(patch, Vector::Zero(4));
    FAIL() << "expected IncompatibleStructure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompatibleStructure);
  }
}

TEST(FieldDerivative, ConstantFieldVanishes) {
  const auto flat = flat_kahler(2);
  const auto patch = constant_patch(2, Matrix::Identity(4, 4), standard_complex_structure(2));
  for (const Matrix& s : field_derivative(patch, Vector::Zero(4), FieldKind::Metric, 1e-5))
    EXPECT_EQ(s.cwiseAbs().maxCoeff(), 0.0);
}

TEST(FieldDerivative, LinearMetricExact) {
  const double step = 1e-5;
  const ManifoldPatch patch(
      2, Box::cube(4, -0.5, 0.5),
      [](const Vector& u) { return Matrix((1.0 + u[0]) * Matrix::Identity(4, 4)); },
      [](const Vector&) { return standard_complex_structure(2); }, "linear");
  const MatrixSlices d = field_derivative(patch, filled(4, 0.1), FieldKind::Metric, step);
  EXPECT_LT((d[0] - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), step * step);
  for (int c = 1; c < 4; ++c) EXPECT_LT(d[c].cwiseAbs().maxCoeff(), step * step);
}

TEST(FieldDerivative, SphereMetricCriticalAtOrigin) {
  const auto s6 = nearly_kahler_s6();
  for (const Matrix& s : field_derivative(s6.patch, Vector::Zero(6), FieldKind::Metric, 1e-5))
    EXPECT_LT(s.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(FieldDerivative, CentralDifferenceIsSecondOrder) {
  // Halving h cuts the error against the analytic jet by about four.
  const auto entry = conformal_hermitian();
  const Vector u = (Vector(4) << 0.7, 0.6, 0.8, 0.9).finished();
  const ManifoldPatch bare(2, entry.patch.domain(),
                           [&](const Vector& x) { return entry.patch.metric(x); },
                           [&](const Vector& x) { return entry.patch.j(x); }, "bare");
  const MatrixSlices exact = entry.patch.jet(FieldKind::Metric, u);
  auto error = [&](double h) {
    const MatrixSlices fd = field_derivative(bare, u, FieldKind::Metric, h);
    double m = 0.0;
    for (int c = 0; c < 4; ++c) m = std::max(m, (fd[c] - exact[c]).cwiseAbs().maxCoeff());
    return m;
  };
  const double ratio = error(1e-2) / error(5e-3);
  EXPECT_NEAR(ratio, 4.0, 0.2);
  EXPECT_LT(jet_residual(entry.patch, u, FieldKind::Metric, 1e-5), 1e-8);
}

TEST(FieldDerivative, RichardsonBeatsPlainDifference) {
  const auto entry = conformal_hermitian();
  const Vector u = (Vector(4) << 0.7, 0.6, 0.8, 0.9).finished();
  const ManifoldPatch bare(2, entry.patch.domain(),
                           [&](const Vector& x) { return entry.patch.metric(x); },
                           [&](const Vector& x) { return entry.patch.j(x); }, "bare");
  const MatrixSlices exact = entry.patch.jet(FieldKind::Metric, u);
  const MatrixSlices plain = field_derivative(bare, u, FieldKind::Metric, 1e-2, false);
  const MatrixSlices rich = field_derivative(bare, u, FieldKind::Metric, 1e-2, true);
  EXPECT_LT((rich[0] - exact[0]).cwiseAbs().maxCoeff(),
            0.01 * (plain[0] - exact[0]).cwiseAbs().maxCoeff());
}

TEST(FieldDerivative, StencilLeavingBoxThrows) {
  const auto flat = flat_kahler(2);
  const ManifoldPatch bare(2, flat.patch.domain(), [](const Vector&) { return Matrix(Matrix::Identity(4, 4)); },
                           [](const Vector&) { return standard_complex_structure(2); }, "bare");
  Vector u = Vector::Zero(4);
  u[0] = 1.0 - 1e-7;
  EXPECT_THROW(field_derivative(bare, u, FieldKind::Metric, 1e-5), Error);
}

TEST(Christoffel, FlatVanishes) {
  const auto flat = flat_kahler(3);
  for (const Matrix& s : christoffel(flat.patch, Vector::Zero(6))) EXPECT_EQ(s.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Christoffel, ExponentialConformalFactor) {
  const MatrixSlices gamma = christoffel(exponential_line(), (Vector(2) << 0.3, -0.2).finished());
  // gamma[c](a, b) = Gamma^c_{ab}
  EXPECT_NEAR(gamma[0](0, 0), 1.0, 1e-8);
  EXPECT_NEAR(gamma[0](1, 1), -1.0, 1e-8);
  EXPECT_NEAR(gamma[1](0, 1), 1.0, 1e-8);
  EXPECT_NEAR(gamma[1](1, 0), 1.0, 1e-8);
  EXPECT_NEAR(gamma[0](0, 1), 0.0, 1e-8);
  EXPECT_NEAR(gamma[1](0, 0), 0.0, 1e-8);
  EXPECT_NEAR(gamma[1](1, 1), 0.0, 1e-8);
}

TEST(Christoffel, SphereOriginVanishes) {
  const auto s6 = nearly_kahler_s6();
  for (const Matrix& s : christoffel(s6.patch, Vector::Zero(6))) EXPECT_LT(s.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Christoffel, SingularMetricThrows) {
  Matrix g = Matrix::Identity(4, 4);
  g(3, 3) = 1e-14;
  const ManifoldPatch patch(2, Box::cube(4, -1, 1), [g](const Vector&) { return g; },
                            [](const Vector&) { return standard_complex_structure(2); }, "singular");
  try {
    christoffel(patch, Vector::Zero(4));
    FAIL() << "expected SingularMetric";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMetric);
  }
}

TEST(Invariants, CatalogEntriesHold) {
  for (const char* id : {"flat:2", "flat:4", "conformal4", "nk-s6", "torus:eps=0.2,freq=2"}) {
    const auto entry = catalog_entry(id);
    const Vector u = entry.patch.domain().center() + 0.01 * Vector::Ones(entry.patch.dim());
    EXPECT_TRUE(check_invariants(entry.patch, u).ok()) << id;
  }
}

TEST(Patch, BoundaryAndChartErrors) {
  const auto s6 = nearly_kahler_s6();
  Vector far = Vector::Zero(6);
  far[0] = 5.0;
  try {
    s6.patch.require_interior(far, 1e-4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ChartOverflow);
  }
  const auto flat = flat_kahler(2);
  Vector edge = Vector::Zero(4);
  edge[1] = 0.99999;
  try {
    flat.patch.require_interior(edge, 1e-4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundaryProximity);
  }
}

TEST(Unitary, GeneratorGivesUnitaryElement) {
  std::mt19937_64 rng(3);
  const Matrix u = unitary_from_generator(ahv::testing::random_skew(6, rng));
  const Matrix j0 = standard_complex_structure(3);
  EXPECT_LT((u.transpose() * u - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((u * j0 - j0 * u).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_NEAR(u.determinant(), 1.0, 1e-12);
}
