#pragma once

#include <cmath>
#include <random>

#include "ahv/geometry.hpp"

namespace ahv::testing {

inline ManifoldPatch constant_patch(int n, const Matrix& g, const Matrix& j, double half = 1.0) {
  return ManifoldPatch(
      n, Box::cube(2 * n, -half, half), [g](const Vector&) { return g; },
      [j](const Vector&) { return j; }, "constant");
}

// g = c^2 I, J = J0: a homothety of flat space.
inline ManifoldPatch scaled_flat(int n, double c) {
  return constant_patch(n, c * c * Matrix::Identity(2 * n, 2 * n), standard_complex_structure(n));
}

// Skew matrix with iid normal entries above the diagonal.
inline Matrix random_skew(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x = Matrix::Zero(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = r + 1; c < dim; ++c) {
      x(r, c) = normal(rng);
      x(c, r) = -x(r, c);
    }
  return x;
}

inline Vector filled(int dim, double value) { return Vector::Constant(dim, value); }

// J + amplitude * K(u) with K neither skew nor constant: breaks J^2 = -I,
// compatibility and the smooth-J identities of N.
inline ManifoldPatch corrupted(const ManifoldPatch& patch, double amplitude) {
  const int dim = patch.dim();
  auto j = [patch, amplitude, dim](const Vector& u) {
    Matrix k(dim, dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) k(a, b) = std::sin(1.0 + a + 2.0 * b + 3.0 * (a + 1) * u[b % dim]);
    return Matrix(patch.j(u) + amplitude * k);
  };
  auto g = [patch](const Vector& u) { return patch.metric(u); };
  return ManifoldPatch(patch.n(), patch.domain(), g, j, patch.label() + "+noise");
}

}  // namespace ahv::testing
