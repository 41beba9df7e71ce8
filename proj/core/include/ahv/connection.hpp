#pragma once

#include <vector>

#include "ahv/geometry.hpp"
#include "ahv/types.hpp"

namespace ahv {

// Frame components of the Levi-Civita connection 1-forms.
// Convention: nabla_X e_B = sum_A omega_{BA}(X) e_A, so
// omega_{BA}(e_C) = g(nabla_{e_C} e_B, e_A).
struct ConnectionTable {
  Array3 omega;  // omega(A, B, C) = omega_{AB}(e_C)

  int dim() const { return omega.extent(0); }
  int n() const { return dim() / 2; }
  // Skew matrix omega(e_C).
  Matrix slice(int c) const;
  double antisymmetry_residual() const;
  ConnectionTable negated() const;
};

// R(A, B, C, D) = R_{AB}(e_C, e_D) with R = omega ^ omega - d omega.
struct CurvatureTable {
  Array4 r;

  int dim() const { return r.extent(0); }
  double antisymmetry_residual() const;
  // Max deviation from R_{AB} = theta_A ^ theta_B (unit round sphere).
  double unit_sphere_residual() const;
  // Max cyclic sum over (B, C, D).
  double first_bianchi_residual() const;
};

// Adapted frames at u and u +- step along each coordinate axis, all built from
// the centre frame's seed.
struct FrameStencil {
  AdaptedFrame center;
  std::vector<AdaptedFrame> plus;
  std::vector<AdaptedFrame> minus;
  double step = 0.0;
};

// Throws FrameDiscontinuity if a displaced frame consumed different seed pivots.
FrameStencil frame_stencil(const ManifoldPatch& patch, const AdaptedFrame& frame, double step);

ConnectionTable connection_coefficients(const ManifoldPatch& patch, const AdaptedFrame& frame,
                                        const NumericOptions& options = {});
ConnectionTable connection_coefficients(const ManifoldPatch& patch, const FrameStencil& stencil,
                                        const NumericOptions& options = {});

// omega_{AB}(d_a): result(A, B, a).
Array3 connection_in_coordinates(const ConnectionTable& table, const Matrix& coframe);

// max |d theta_A(d_a, d_b) - sum_B (theta_B ^ omega_{BA})(d_a, d_b)|.
double structure_equation_residual(const ManifoldPatch& patch, const Vector& u,
                                   const NumericOptions& options = {});
// Same check against an explicitly supplied table.
double structure_equation_residual(const ManifoldPatch& patch, const FrameStencil& stencil,
                                   const ConnectionTable& table);

// d omega_{AB}(d_a, d_b) by nested central differences: result(A, B, a, b).
Array4 connection_exterior_derivative(const ManifoldPatch& patch, const AdaptedFrame& frame,
                                      const NumericOptions& options = {});

CurvatureTable curvature_forms(const ManifoldPatch& patch, const Vector& u,
                               const NumericOptions& options = {});
CurvatureTable curvature_forms(const ManifoldPatch& patch, const AdaptedFrame& frame,
                               const NumericOptions& options = {});

}  // namespace ahv
