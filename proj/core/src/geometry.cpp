#include "ahv/geometry.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace ahv {

namespace {

constexpr double kPivotTolerance = 1e-8;
constexpr double kInvariantTolerance = 1e-10;
constexpr double kMaxConditionNumber = 1e12;

std::string describe(const Vector& u) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index k = 0; k < u.size(); ++k) os << (k ? ", " : "") << u[k];
  os << ")";
  return os.str();
}

MatrixSlices central_difference(const ManifoldPatch& patch, const Vector& u, FieldKind which,
                                double step) {
  MatrixSlices out(patch.dim());
  for (int c = 0; c < patch.dim(); ++c) {
    Vector plus = u, minus = u;
    plus[c] += step;
    minus[c] -= step;
    out[c] = (patch.field(which, plus) - patch.field(which, minus)) / (2.0 * step);
  }
  return out;
}

}  // namespace

Box Box::cube(int dim, double lo, double hi) {
  return Box{Vector::Constant(dim, lo), Vector::Constant(dim, hi)};
}

bool Box::contains(const Vector& u, double margin) const {
  if (u.size() != lower.size()) return false;
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (!(u[k] - margin > lower[k] && u[k] + margin < upper[k])) return false;
  }
  return true;
}

std::vector<std::string> Attributes::names() const {
  std::vector<std::string> out;
  if (has(Attribute::Integrable)) out.emplace_back("integrable");
  if (has(Attribute::Flat)) out.emplace_back("flat");
  if (has(Attribute::UnitRoundSphere)) out.emplace_back("unit_round_sphere");
  if (has(Attribute::NearlyKahler)) out.emplace_back("nearly_kahler");
  return out;
}

ManifoldPatch::ManifoldPatch(int n, Box domain, MatrixField metric,
                             MatrixField complex_structure, std::string label)
    : n_(n),
      domain_(std::move(domain)),
      metric_(std::move(metric)),
      j_(std::move(complex_structure)),
      label_(std::move(label)) {
  if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "half-dimension must be positive");
  if (domain_.dim() != 2 * n_ || domain_.upper.size() != 2 * n_)
    throw Error(ErrorCode::InvalidArgument, "domain box dimension must equal 2n");
  if (!metric_ || !j_) throw Error(ErrorCode::InvalidArgument, "metric and J fields required");
}

ManifoldPatch ManifoldPatch::with_metric_jet(JetField jet) const {
  ManifoldPatch copy = *this;
  copy.metric_jet_ = std::move(jet);
  return copy;
}

ManifoldPatch ManifoldPatch::with_j_jet(JetField jet) const {
  ManifoldPatch copy = *this;
  copy.j_jet_ = std::move(jet);
  return copy;
}

ManifoldPatch ManifoldPatch::with_chart_radius(double radius) const {
  ManifoldPatch copy = *this;
  copy.chart_radius_ = radius;
  return copy;
}

ManifoldPatch ManifoldPatch::with_attributes(Attributes attributes) const {
  ManifoldPatch copy = *this;
  copy.attributes_ = attributes;
  return copy;
}

bool ManifoldPatch::has_jet(FieldKind which) const {
  return which == FieldKind::Metric ? static_cast<bool>(metric_jet_)
                                    : static_cast<bool>(j_jet_);
}

MatrixSlices ManifoldPatch::jet(FieldKind which, const Vector& u) const {
  if (!has_jet(which)) throw Error(ErrorCode::InvalidArgument, "patch has no jet for field");
  return which == FieldKind::Metric ? metric_jet_(u) : j_jet_(u);
}

Matrix ManifoldPatch::field(FieldKind which, const Vector& u) const {
  return which == FieldKind::Metric ? metric_(u) : j_(u);
}

bool ManifoldPatch::is_interior(const Vector& u, double margin) const {
  if (!domain_.contains(u, margin)) return false;
  if (chart_radius_ && !(u.norm() + margin < *chart_radius_)) return false;
  return true;
}

void ManifoldPatch::require_interior(const Vector& u, double margin) const {
  if (u.size() != dim())
    throw Error(ErrorCode::InvalidArgument, "point has dimension " + std::to_string(u.size()) +
                                                ", patch needs " + std::to_string(dim()));
  if (chart_radius_ && u.norm() >= *chart_radius_)
    throw Error(ErrorCode::ChartOverflow,
                "point " + describe(u) + " outside chart radius " + std::to_string(*chart_radius_));
  if (!is_interior(u, margin))
    throw Error(ErrorCode::BoundaryProximity,
                "point " + describe(u) + " within " + std::to_string(margin) +
                    " of the boundary of '" + label_ + "'");
}

InvariantResiduals check_invariants(const ManifoldPatch& patch, const Vector& u) {
  const Matrix g = patch.metric(u);
  const Matrix j = patch.j(u);
  const int dim = patch.dim();
  InvariantResiduals r;
  r.metric_asymmetry = (g - g.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
  r.min_metric_eigenvalue = eig.eigenvalues().minCoeff();
  r.j_square = (j * j + Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  r.compatibility = (j.transpose() * g * j - g).cwiseAbs().maxCoeff();
  return r;
}

double jet_residual(const ManifoldPatch& patch, const Vector& u, FieldKind which, double step) {
  if (!patch.has_jet(which)) return 0.0;
  const MatrixSlices jet = patch.jet(which, u);
  const MatrixSlices fd = central_difference(patch, u, which, step);
  double worst = 0.0;
  for (int c = 0; c < patch.dim(); ++c)
    worst = std::max(worst, (jet[c] - fd[c]).cwiseAbs().maxCoeff());
  return worst;
}

MatrixSlices field_derivative(const ManifoldPatch& patch, const Vector& u, FieldKind which,
                              double step, bool richardson) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "FD step must be positive");
  if (patch.has_jet(which)) return patch.jet(which, u);
  patch.require_interior(u, step);
  MatrixSlices coarse = central_difference(patch, u, which, step);
  if (!richardson) return coarse;
  MatrixSlices fine = central_difference(patch, u, which, 0.5 * step);
  for (int c = 0; c < patch.dim(); ++c) coarse[c] = (4.0 * fine[c] - coarse[c]) / 3.0;
  return coarse;
}

MatrixSlices christoffel(const ManifoldPatch& patch, const Vector& u, double step,
                         bool richardson) {
  const int dim = patch.dim();
  const Matrix g = patch.metric(u);
  Eigen::JacobiSVD<Matrix> svd(g);
  const auto& sv = svd.singularValues();
  if (!(sv[dim - 1] > 0.0) || sv[0] / sv[dim - 1] > kMaxConditionNumber)
    throw Error(ErrorCode::SingularMetric, "metric is numerically singular at " + describe(u));
  const Matrix g_inv = g.inverse();
  const MatrixSlices dg = field_derivative(patch, u, FieldKind::Metric, step, richardson);

  // lowered[d](a, b) = 1/2 (d_a g_{db} + d_b g_{da} - d_d g_{ab})
  MatrixSlices lowered(dim, Matrix::Zero(dim, dim));
  for (int d = 0; d < dim; ++d)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        lowered[d](a, b) = 0.5 * (dg[a](d, b) + dg[b](d, a) - dg[d](a, b));

  MatrixSlices gamma(dim, Matrix::Zero(dim, dim));
  for (int c = 0; c < dim; ++c)
    for (int d = 0; d < dim; ++d) gamma[c] += g_inv(c, d) * lowered[d];
  return gamma;
}

AdaptedFrame adapt_frame(const ManifoldPatch& patch, const Vector& u,
                         const std::optional<Matrix>& seed) {
  const int n = patch.n();
  const int dim = patch.dim();
  if (u.size() != dim) throw Error(ErrorCode::InvalidArgument, "point dimension mismatch");
  const Matrix s = seed.value_or(Matrix::Identity(dim, dim));
  if (s.rows() != dim || s.cols() < n)
    throw Error(ErrorCode::InvalidArgument, "seed must have 2n rows and at least n columns");

  const Matrix g = patch.metric(u);
  const Matrix j = patch.j(u);
  if (const InvariantResiduals inv = check_invariants(patch, u); !inv.ok(kInvariantTolerance)) {
    std::ostringstream os;
    os << "at " << describe(u) << ": |J^2+I| = " << inv.j_square
       << ", |J^T g J - g| = " << inv.compatibility
       << ", min eig(g) = " << inv.min_metric_eigenvalue;
    throw Error(ErrorCode::IncompatibleStructure, os.str());
  }

  AdaptedFrame frame{u, Matrix::Zero(dim, dim), s, {}};
  auto inner = [&g](const Vector& x, const Vector& y) { return x.dot(g * y); };

  int column = 0;
  for (int k = 0; k < n; ++k) {
    bool placed = false;
    while (column < s.cols() && !placed) {
      Vector v = s.col(column);
      // Two passes of modified Gram-Schmidt against e_m and J e_m, m < k.
      for (int pass = 0; pass < 2; ++pass) {
        for (int m = 0; m < k; ++m) {
          v -= inner(frame.basis.col(m), v) * frame.basis.col(m);
          v -= inner(frame.basis.col(n + m), v) * frame.basis.col(n + m);
        }
      }
      const double norm = std::sqrt(std::max(0.0, inner(v, v)));
      if (norm >= kPivotTolerance) {
        frame.basis.col(k) = v / norm;
        frame.basis.col(n + k) = j * frame.basis.col(k);
        frame.pivots.push_back(column);
        placed = true;
      }
      ++column;
    }
    if (!placed)
      throw Error(ErrorCode::DegeneratePivot,
                  "seed columns exhausted while building e_" + std::to_string(k + 1) + " at " +
                      describe(u));
  }
  return frame;
}

double orthonormality_residual(const AdaptedFrame& frame, const Matrix& metric) {
  const Matrix gram = frame.basis.transpose() * metric * frame.basis;
  return (gram - Matrix::Identity(frame.dim(), frame.dim())).cwiseAbs().maxCoeff();
}

double adaptation_residual(const AdaptedFrame& frame, const Matrix& complex_structure) {
  const int n = frame.n();
  return (complex_structure * frame.basis.leftCols(n) - frame.basis.rightCols(n))
      .cwiseAbs()
      .maxCoeff();
}

Matrix unitary_from_generator(const Matrix& skew) {
  const Matrix j0 = standard_complex_structure(static_cast<int>(skew.rows()) / 2);
  const Matrix generator = 0.5 * (skew - j0 * skew * j0);
  return generator.exp();
}

}  // namespace ahv
