#include "ahv/connection.hpp"

#include <algorithm>
#include <cmath>

namespace ahv {

namespace {

void require_same_pivots(const AdaptedFrame& center, const AdaptedFrame& displaced) {
  if (center.pivots != displaced.pivots)
    throw Error(ErrorCode::FrameDiscontinuity,
                "adapted frame changed seed pivots inside the difference stencil");
}

AdaptedFrame displaced_frame(const ManifoldPatch& patch, const AdaptedFrame& frame, int axis,
                             double offset) {
  Vector v = frame.point;
  v[axis] += offset;
  AdaptedFrame out = adapt_frame(patch, v, frame.seed);
  require_same_pivots(frame, out);
  return out;
}

}  // namespace

Matrix ConnectionTable::slice(int c) const {
  const int d = dim();
  Matrix p(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) p(a, b) = omega(a, b, c);
  return p;
}

double ConnectionTable::antisymmetry_residual() const {
  const int d = dim();
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        worst = std::max(worst, std::abs(omega(a, b, c) + omega(b, a, c)));
  return worst;
}

ConnectionTable ConnectionTable::negated() const {
  ConnectionTable out = *this;
  for (double& v : out.omega.data()) v = -v;
  return out;
}

double CurvatureTable::antisymmetry_residual() const {
  const int d = dim();
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          worst = std::max(worst, std::abs(r(a, b, c, e) + r(b, a, c, e)));
          worst = std::max(worst, std::abs(r(a, b, c, e) + r(a, b, e, c)));
        }
  return worst;
}

double CurvatureTable::unit_sphere_residual() const {
  const int d = dim();
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const double expected = (a == c && b == e ? 1.0 : 0.0) - (a == e && b == c ? 1.0 : 0.0);
          worst = std::max(worst, std::abs(r(a, b, c, e) - expected));
        }
  return worst;
}

double CurvatureTable::first_bianchi_residual() const {
  const int d = dim();
  double worst = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          worst = std::max(worst, std::abs(r(a, b, c, e) + r(a, c, e, b) + r(a, e, b, c)));
  return worst;
}

FrameStencil frame_stencil(const ManifoldPatch& patch, const AdaptedFrame& frame, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "FD step must be positive");
  patch.require_interior(frame.point, step);
  FrameStencil stencil{frame, {}, {}, step};
  for (int a = 0; a < patch.dim(); ++a) {
    stencil.plus.push_back(displaced_frame(patch, frame, a, step));
    stencil.minus.push_back(displaced_frame(patch, frame, a, -step));
  }
  return stencil;
}

ConnectionTable connection_coefficients(const ManifoldPatch& patch, const AdaptedFrame& frame,
                                        const NumericOptions& options) {
  return connection_coefficients(patch, frame_stencil(patch, frame, options.fd_step), options);
}

ConnectionTable connection_coefficients(const ManifoldPatch& patch, const FrameStencil& stencil,
                                        const NumericOptions& options) {
  const int dim = patch.dim();
  const Vector& u = stencil.center.point;
  const Matrix& e = stencil.center.basis;
  const Matrix g = patch.metric(u);
  const MatrixSlices gamma = christoffel(patch, u, stencil.step, options.richardson);

  // nabla_a E = d_a E + Gamma_a E, with Gamma_a(c, d) = Gamma^c_{ad}.
  MatrixSlices covariant(dim);
  for (int a = 0; a < dim; ++a) {
    Matrix gamma_a(dim, dim);
    for (int c = 0; c < dim; ++c) gamma_a.row(c) = gamma[c].row(a);
    const Matrix de = (stencil.plus[a].basis - stencil.minus[a].basis) / (2.0 * stencil.step);
    covariant[a] = de + gamma_a * e;
  }

  const Matrix lower = e.transpose() * g;
  ConnectionTable table{Array3({dim, dim, dim})};
  for (int c = 0; c < dim; ++c) {
    Matrix along = Matrix::Zero(dim, dim);  // column B: nabla_{e_C} e_B
    for (int a = 0; a < dim; ++a) along += e(a, c) * covariant[a];
    const Matrix w = lower * along;  // w(A, B) = omega_{BA}(e_C)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) table.omega(b, a, c) = w(a, b);
  }
  return table;
}

Array3 connection_in_coordinates(const ConnectionTable& table, const Matrix& coframe) {
  const int dim = table.dim();
  Array3 out({dim, dim, dim});
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int x = 0; x < dim; ++x) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += table.omega(a, b, c) * coframe(c, x);
        out(a, b, x) = s;
      }
  return out;
}

double structure_equation_residual(const ManifoldPatch& patch, const Vector& u,
                                   const NumericOptions& options) {
  const FrameStencil stencil = frame_stencil(patch, adapt_frame(patch, u), options.fd_step);
  return structure_equation_residual(patch, stencil, connection_coefficients(patch, stencil, options));
}

double structure_equation_residual(const ManifoldPatch& patch, const FrameStencil& stencil,
                                   const ConnectionTable& table) {
  const int dim = patch.dim();
  const Vector& u = stencil.center.point;
  const Matrix theta = stencil.center.coframe(patch.metric(u));
  MatrixSlices dtheta(dim);
  for (int a = 0; a < dim; ++a) {
    const Matrix plus = stencil.plus[a].coframe(patch.metric(stencil.plus[a].point));
    const Matrix minus = stencil.minus[a].coframe(patch.metric(stencil.minus[a].point));
    dtheta[a] = (plus - minus) / (2.0 * stencil.step);
  }
  const Array3 omega = connection_in_coordinates(table, theta);

  double worst = 0.0;
  for (int A = 0; A < dim; ++A)
    for (int a = 0; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b) {
        const double lhs = dtheta[a](A, b) - dtheta[b](A, a);
        double rhs = 0.0;
        for (int B = 0; B < dim; ++B)
          rhs += theta(B, a) * omega(B, A, b) - theta(B, b) * omega(B, A, a);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
  return worst;
}

Array4 connection_exterior_derivative(const ManifoldPatch& patch, const AdaptedFrame& frame,
                                      const NumericOptions& options) {
  const int dim = patch.dim();
  const double h = options.second_step;
  patch.require_interior(frame.point, 2.0 * h);
  NumericOptions inner = options;
  inner.fd_step = h;

  auto omega_coords_at = [&](int axis, double offset) {
    const AdaptedFrame shifted = displaced_frame(patch, frame, axis, offset);
    const FrameStencil stencil = frame_stencil(patch, shifted, h);
    const ConnectionTable table = connection_coefficients(patch, stencil, inner);
    return connection_in_coordinates(table, shifted.coframe(patch.metric(shifted.point)));
  };

  // partial[a](A, B, b) = d_a (omega_{AB}(d_b))
  std::vector<Array3> partial;
  partial.reserve(dim);
  for (int a = 0; a < dim; ++a) {
    const Array3 plus = omega_coords_at(a, h);
    const Array3 minus = omega_coords_at(a, -h);
    Array3 d({dim, dim, dim});
    for (std::size_t k = 0; k < d.data().size(); ++k)
      d.data()[k] = (plus.data()[k] - minus.data()[k]) / (2.0 * h);
    partial.push_back(std::move(d));
  }

  Array4 out({dim, dim, dim, dim});
  for (int A = 0; A < dim; ++A)
    for (int B = 0; B < dim; ++B)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          out(A, B, a, b) = partial[a](A, B, b) - partial[b](A, B, a);
  return out;
}

CurvatureTable curvature_forms(const ManifoldPatch& patch, const Vector& u,
                               const NumericOptions& options) {
  return curvature_forms(patch, adapt_frame(patch, u), options);
}

CurvatureTable curvature_forms(const ManifoldPatch& patch, const AdaptedFrame& frame,
                               const NumericOptions& options) {
  const int dim = patch.dim();
  const Array4 domega = connection_exterior_derivative(patch, frame, options);
  const ConnectionTable table = connection_coefficients(patch, frame, options);
  const Array3 omega = connection_in_coordinates(table, frame.coframe(patch.metric(frame.point)));

  Array4 coord({dim, dim, dim, dim});
  for (int A = 0; A < dim; ++A)
    for (int B = 0; B < dim; ++B)
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          double wedge = 0.0;
          for (int C = 0; C < dim; ++C)
            wedge += omega(A, C, a) * omega(C, B, b) - omega(A, C, b) * omega(C, B, a);
          coord(A, B, a, b) = wedge - domega(A, B, a, b);
        }

  const Matrix& e = frame.basis;
  CurvatureTable out{Array4({dim, dim, dim, dim})};
  for (int A = 0; A < dim; ++A)
    for (int B = 0; B < dim; ++B) {
      Matrix rc(dim, dim);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) rc(a, b) = coord(A, B, a, b);
      const Matrix rf = e.transpose() * rc * e;
      for (int C = 0; C < dim; ++C)
        for (int D = 0; D < dim; ++D) out.r(A, B, C, D) = rf(C, D);
    }
  return out;
}

}  // namespace ahv
