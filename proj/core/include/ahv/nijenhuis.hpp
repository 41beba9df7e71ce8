#pragma once

#include "ahv/coefficients.hpp"
#include "ahv/geometry.hpp"
#include "ahv/types.hpp"

namespace ahv {

// N(X, Y) = [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY] at one point.
struct NijenhuisTensor {
  Vector point;
  Array3 coord;  // coord(c, a, b) = N^c_{ab} on coordinate fields
  Array3 frame;  // frame(C, A, B) = theta_C(N(e_A, e_B))
};

// Metric-free route: only first derivatives of J enter.
Array3 nijenhuis_coordinates(const ManifoldPatch& patch, const Vector& u,
                             const NumericOptions& options = {});

// Frame route: N(e_i, e_j) = sum_k d_{ijk} e_k - d'_{ijk} e_{k+n} for i < j; the
// other slots follow from antisymmetry and N(JX, Y) = -J N(X, Y) = N(X, JY).
Array3 nijenhuis_frame(const StructureCoefficients& coeffs);

Array3 nijenhuis_to_frame(const Array3& coord, const AdaptedFrame& frame, const Matrix& metric);

NijenhuisTensor nijenhuis_tensor(const ManifoldPatch& patch, const AdaptedFrame& frame,
                                 const NumericOptions& options = {});

// sum_{A,B} |N(e_A, e_B)|^2.
double nijenhuis_norm(const NijenhuisTensor& tensor);
// As above, and cross-checks 4 sum(d^2 + d'^2) and 4 sum_{i,j} |N(e_i, e_j)|^2.
// Throws CrossPathMismatch when |a - b| / max(1, |b|) exceeds rel_tol.
double nijenhuis_norm(const NijenhuisTensor& tensor, const StructureCoefficients& coeffs,
                      double rel_tol = 1e-6);

// 4 sum_{i,j,k} (d_{ijk}^2 + d'_{ijk}^2).
double norm_from_coefficients(const StructureCoefficients& coeffs);

double relative_mismatch(double a, double b);

// Worst relative disagreement between the frame sum and the two coefficient
// expressions of |N|^2.
double nijenhuis_route_mismatch(const NijenhuisTensor& tensor, const StructureCoefficients& coeffs);

struct SymmetryResiduals {
  double antisymmetry = 0.0;  // N(Y, X) + N(X, Y)
  double j_left = 0.0;        // N(JX, Y) + J N(X, Y)
  double j_right = 0.0;       // N(X, JY) + J N(X, Y)

  double max() const { return std::max({antisymmetry, j_left, j_right}); }
};

SymmetryResiduals symmetry_residuals(const NijenhuisTensor& tensor, const ManifoldPatch& patch,
                                     const Vector& u);

}  // namespace ahv
