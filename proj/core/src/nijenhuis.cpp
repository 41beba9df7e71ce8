#include "ahv/nijenhuis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ahv {

Array3 nijenhuis_coordinates(const ManifoldPatch& patch, const Vector& u,
                             const NumericOptions& options) {
  const int dim = patch.dim();
  const Matrix j = patch.j(u);
  const MatrixSlices dj =
      field_derivative(patch, u, FieldKind::ComplexStructure, options.fd_step, options.richardson);

  Array3 out({dim, dim, dim});
  for (int e = 0; e < dim; ++e)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += j(c, a) * dj[c](e, b) - j(c, b) * dj[c](e, a);
        for (int d = 0; d < dim; ++d) s += j(e, d) * (dj[b](d, a) - dj[a](d, b));
        out(e, a, b) = s;
      }
  return out;
}

Array3 nijenhuis_frame(const StructureCoefficients& coeffs) {
  const int n = coeffs.n();
  const int dim = 2 * n;
  const Matrix j0 = standard_complex_structure(n);
  Array3 out({dim, dim, dim});

  auto store = [&out, dim](int a, int b, const Vector& v) {
    for (int c = 0; c < dim; ++c) out(c, a, b) = v[c];
  };

  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      Vector v = Vector::Zero(dim);
      if (i < k) {
        for (int m = 0; m < n; ++m) {
          v[m] = coeffs.d(i, k, m);
          v[m + n] = -coeffs.dp(i, k, m);
        }
      } else {
        for (int m = 0; m < n; ++m) {
          v[m] = -coeffs.d(k, i, m);
          v[m + n] = coeffs.dp(k, i, m);
        }
      }
      const Vector jv = -(j0 * v);
      store(i, k, v);
      store(i + n, k, jv);
      store(i, k + n, jv);
      store(i + n, k + n, -v);
    }
  return out;
}

Array3 nijenhuis_to_frame(const Array3& coord, const AdaptedFrame& frame, const Matrix& metric) {
  const int dim = frame.dim();
  const Matrix theta = frame.coframe(metric);
  const Matrix& e = frame.basis;
  Array3 out({dim, dim, dim});
  for (int c = 0; c < dim; ++c) {
    Matrix slice(dim, dim);  // slice(a, b) = N^c_{ab}
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) slice(a, b) = coord(c, a, b);
    const Matrix pulled = e.transpose() * slice * e;
    for (int C = 0; C < dim; ++C)
      for (int A = 0; A < dim; ++A)
        for (int B = 0; B < dim; ++B) out(C, A, B) += theta(C, c) * pulled(A, B);
  }
  return out;
}

NijenhuisTensor nijenhuis_tensor(const ManifoldPatch& patch, const AdaptedFrame& frame,
                                 const NumericOptions& options) {
  Array3 coord = nijenhuis_coordinates(patch, frame.point, options);
  Array3 framed = nijenhuis_to_frame(coord, frame, patch.metric(frame.point));
  return NijenhuisTensor{frame.point, std::move(coord), std::move(framed)};
}

double nijenhuis_norm(const NijenhuisTensor& tensor) { return tensor.frame.squared_sum(); }

double norm_from_coefficients(const StructureCoefficients& coeffs) {
  return 4.0 * (coeffs.d.squared_sum() + coeffs.dp.squared_sum());
}

double relative_mismatch(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

namespace {

struct NormRoutes {
  double full;
  double unitary_block;
  double from_d;
};

NormRoutes norm_routes(const NijenhuisTensor& tensor, const StructureCoefficients& coeffs) {
  const int n = coeffs.n();
  const int dim = 2 * n;
  double block = 0.0;
  for (int c = 0; c < dim; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) block += tensor.frame(c, i, j) * tensor.frame(c, i, j);
  return {nijenhuis_norm(tensor), 4.0 * block, norm_from_coefficients(coeffs)};
}

}  // namespace

double nijenhuis_route_mismatch(const NijenhuisTensor& tensor, const StructureCoefficients& coeffs) {
  const NormRoutes r = norm_routes(tensor, coeffs);
  return std::max(relative_mismatch(r.full, r.from_d), relative_mismatch(r.full, r.unitary_block));
}

double nijenhuis_norm(const NijenhuisTensor& tensor, const StructureCoefficients& coeffs,
                      double rel_tol) {
  const NormRoutes r = norm_routes(tensor, coeffs);
  if (relative_mismatch(r.full, r.from_d) > rel_tol ||
      relative_mismatch(r.full, r.unitary_block) > rel_tol) {
    std::ostringstream os;
    os.precision(17);
    os << "|N|^2 routes disagree: frame sum " << r.full << ", 4 sum|N(e_i,e_j)|^2 "
       << r.unitary_block << ", 4 sum(d^2 + d'^2) " << r.from_d;
    throw Error(ErrorCode::CrossPathMismatch, os.str());
  }
  return r.full;
}

SymmetryResiduals symmetry_residuals(const NijenhuisTensor& tensor, const ManifoldPatch& patch,
                                     const Vector& u) {
  const Array3& nt = tensor.coord;
  const int dim = nt.extent(0);
  const Matrix j = patch.j(u);
  SymmetryResiduals r;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c) {
        double jn = 0.0, left = 0.0, right = 0.0;
        for (int m = 0; m < dim; ++m) {
          jn += j(c, m) * nt(m, a, b);
          left += j(m, a) * nt(c, m, b);
          right += j(m, b) * nt(c, a, m);
        }
        r.antisymmetry = std::max(r.antisymmetry, std::abs(nt(c, a, b) + nt(c, b, a)));
        r.j_left = std::max(r.j_left, std::abs(left + jn));
        r.j_right = std::max(r.j_right, std::abs(right + jn));
      }
  return r;
}

}  // namespace ahv
