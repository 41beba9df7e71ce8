#include "ahv/twistorform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ahv {

namespace {

constexpr double kDegeneracyThreshold = 1e-12;

void add_kahler_term(Matrix& f, int n) {
  for (int i = 0; i < n; ++i) {
    f(i, i + n) += 1.0;
    f(i + n, i) -= 1.0;
  }
}

}  // namespace

TwistorFormMatrix phi_matrix(const AlphaBetaTable& ab, const Vector& point) {
  const int n = ab.n();
  const int dim = 2 * n;
  Matrix f = Matrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          s += ab.alpha(i, j, a) * ab.beta(i, j, b) - ab.alpha(i, j, b) * ab.beta(i, j, a);
      f(a, b) = 0.5 * s;
    }
  add_kahler_term(f, n);
  return TwistorFormMatrix{std::move(f), point};
}

TwistorFormMatrix phi_via_bundle_formula(const ConnectionTable& table, const Vector& point) {
  const int n = table.n();
  const int dim = table.dim();
  const Matrix j0 = standard_complex_structure(n);
  std::vector<Matrix> rotated(dim), sigma(dim);
  for (int a = 0; a < dim; ++a) {
    const Matrix w = table.slice(a);
    rotated[a] = j0 * w - w * j0;
    sigma[a] = w + j0 * w * j0;
  }
  Matrix f(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const double so_pairing = -(rotated[a] * sigma[b]).trace();
      // theta(e_A) J0 . theta(e_B) = (J0)_{AB}
      f(a, b) = 0.25 * so_pairing - j0(a, b);
    }
  return TwistorFormMatrix{std::move(f), point};
}

double margin(const TwistorFormMatrix& form) {
  const int dim = static_cast<int>(form.f.rows());
  const Matrix fj = form.f * standard_complex_structure(dim / 2);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (fj + fj.transpose()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double pfaffian(const Matrix& skew) {
  const Eigen::Index dim = skew.rows();
  if (dim % 2 != 0) return 0.0;
  Matrix a = skew;
  double value = 1.0;
  for (Eigen::Index k = 0; k + 1 < dim; k += 2) {
    Eigen::Index pivot = 0;
    a.col(k).tail(dim - k - 1).cwiseAbs().maxCoeff(&pivot);
    pivot += k + 1;
    if (pivot != k + 1) {
      a.row(k + 1).swap(a.row(pivot));
      a.col(k + 1).swap(a.col(pivot));
      value = -value;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    value *= a(k, k + 1);
    if (k + 2 < dim) {
      const Eigen::Index rest = dim - k - 2;
      const Vector tau = a.row(k).tail(rest).transpose() / a(k, k + 1);
      const Vector col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return value;
}

Nondegeneracy nondegenerate(const TwistorFormMatrix& form) {
  const Matrix& f = form.f;
  const int dim = static_cast<int>(f.rows());
  const int n = dim / 2;
  Nondegeneracy out;
  out.determinant = f.determinant();
  // Floor at 1, the size of the Kahler term: where phi vanishes identically the
  // entries are pure FD noise and a purely relative test would accept them.
  const double scale = std::max(1.0, f.cwiseAbs().maxCoeff());
  out.nondegenerate = std::abs(out.determinant) > kDegeneracyThreshold * std::pow(scale, dim);
  if (!out.nondegenerate) return out;

  Matrix interleaved(dim, dim);
  auto slot = [n](int p) { return p % 2 == 0 ? p / 2 : n + p / 2; };
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q) interleaved(p, q) = f(slot(p), slot(q));
  const double pf = pfaffian(interleaved);
  out.pfaffian_sign = pf > 0.0 ? 1 : (pf < 0.0 ? -1 : 0);
  return out;
}

double theorem_constant(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "theorem constant defined for n >= 2");
  return n >= 3 ? 64.0 / 5.0 : 16.0;
}

TheoremReport theorem_report(const ManifoldPatch& patch, const Vector& u,
                             const ReportOptions& options) {
  const int n = patch.n();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "theorem report needs n >= 2");
  const AdaptedFrame frame = adapt_frame(patch, u, options.seed);
  const FrameStencil stencil = frame_stencil(patch, frame, options.numeric.fd_step);
  const ConnectionTable table = connection_coefficients(patch, stencil, options.numeric);
  const AlphaBetaTable ab = alpha_beta(table);
  const StructureCoefficients coeffs = structure_coefficients(ab);
  const NijenhuisTensor tensor = nijenhuis_tensor(patch, frame, options.numeric);
  const TwistorFormMatrix form = phi_matrix(ab, u);
  const TwistorFormMatrix bundle_form = phi_via_bundle_formula(table, u);

  TheoremReport r;
  r.point = u;
  r.n = n;
  r.structure_residual = structure_equation_residual(patch, stencil, table);
  r.n_route_mismatch = nijenhuis_route_mismatch(tensor, coeffs);
  r.phi_formula_mismatch = (form.f - bundle_form.f).cwiseAbs().maxCoeff();
  r.norm_n2 = nijenhuis_norm(tensor, coeffs);
  r.margin = margin(form);
  r.sum_a2 = coeffs.a_row.squaredNorm();
  r.bound_quarter_a = 1.0 - 0.25 * r.sum_a2;
  r.bound_paper = n >= 3 ? 1.0 - (5.0 / 64.0) * r.norm_n2 : 1.0 - r.norm_n2 / 16.0;
  const Nondegeneracy nd = nondegenerate(form);
  r.nondegenerate = nd.nondegenerate;
  r.pfaffian_sign = nd.pfaffian_sign;
  r.determinant = nd.determinant;

  const double tol = options.tol;
  const double sum_c2 = coeffs.c.squared_sum();
  const double sum_cp2 = coeffs.cp.squared_sum();
  const double sum_d2 = coeffs.d.squared_sum();
  const double sum_dp2 = coeffs.dp.squared_sum();
  auto scaled = [tol](double magnitude) { return tol * std::max(1.0, std::abs(magnitude)); };

  r.chain_ok.quarter_bound = r.margin >= r.bound_quarter_a - scaled(r.sum_a2);
  if (n >= 3) {
    r.chain_ok.coefficient_bound = sum_c2 <= 1.25 * sum_d2 + scaled(sum_d2) &&
                                   sum_cp2 <= 1.25 * sum_dp2 + scaled(sum_dp2);
  } else {
    const double pair = 2.0 * (coeffs.d(0, 1, 0) * coeffs.d(0, 1, 0) +
                               coeffs.d(1, 0, 1) * coeffs.d(1, 0, 1));
    const double pair_p = 2.0 * (coeffs.dp(0, 1, 0) * coeffs.dp(0, 1, 0) +
                                 coeffs.dp(1, 0, 1) * coeffs.dp(1, 0, 1));
    r.chain_ok.coefficient_bound =
        std::abs(sum_c2 - sum_d2) <= scaled(sum_d2) && std::abs(sum_d2 - pair) <= scaled(pair) &&
        std::abs(sum_cp2 - sum_dp2) <= scaled(sum_dp2) &&
        std::abs(sum_dp2 - pair_p) <= scaled(pair_p);
  }
  r.chain_ok.paper_bound = r.bound_quarter_a >= r.bound_paper - scaled(r.norm_n2);
  r.chain_ok.theorem = !(r.norm_n2 < theorem_constant(n)) || r.nondegenerate;

  if (options.throw_on_violation && !r.chain_ok.all()) {
    std::ostringstream os;
    os.precision(17);
    os << "at '" << patch.label() << "': ";
    if (!r.chain_ok.quarter_bound)
      os << "(a) margin " << r.margin << " < 1 - sum A^2/4 = " << r.bound_quarter_a;
    else if (!r.chain_ok.coefficient_bound)
      os << "(b) coefficient inequality failed: sum C^2 = " << sum_c2 << ", sum d^2 = " << sum_d2;
    else if (!r.chain_ok.paper_bound)
      os << "(c) 1 - sum A^2/4 = " << r.bound_quarter_a << " < bound " << r.bound_paper;
    else
      os << "(d) |N|^2 = " << r.norm_n2 << " below threshold but phi is degenerate";
    throw Error(ErrorCode::ChainViolation, os.str());
  }
  return r;
}

double chern_identity_residual(const ManifoldPatch& patch, const Vector& u,
                               const NumericOptions& options) {
  if (!patch.attributes().has(Attribute::UnitRoundSphere))
    throw Error(ErrorCode::WrongPatch,
                "'" + patch.label() + "' is not marked as the unit round sphere");
  const int n = patch.n();
  const int dim = patch.dim();
  const AdaptedFrame frame = adapt_frame(patch, u);
  const Array4 domega = connection_exterior_derivative(patch, frame, options);
  const ConnectionTable table = connection_coefficients(patch, frame, options);
  const TwistorFormMatrix form = phi_matrix(alpha_beta(table), u);
  const Matrix theta = frame.coframe(patch.metric(u));
  const Matrix phi_coords = theta.transpose() * form.f * theta;

  double worst = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      double s = phi_coords(a, b);
      for (int i = 0; i < n; ++i) s += domega(i, i + n, a, b);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

}  // namespace ahv
