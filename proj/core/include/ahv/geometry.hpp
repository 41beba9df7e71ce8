#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ahv/errors.hpp"
#include "ahv/types.hpp"

namespace ahv {

// Axis-aligned coordinate box in R^{2n}.
struct Box {
  Vector lower;
  Vector upper;

  static Box cube(int dim, double lo, double hi);

  int dim() const { return static_cast<int>(lower.size()); }
  Vector center() const { return 0.5 * (lower + upper); }
  // Strict interior with the given clearance on every face.
  bool contains(const Vector& u, double margin = 0.0) const;
};

enum class Attribute : unsigned {
  Integrable = 1u << 0,
  Flat = 1u << 1,
  UnitRoundSphere = 1u << 2,
  NearlyKahler = 1u << 3,
};

class Attributes {
 public:
  Attributes() = default;
  Attributes(std::initializer_list<Attribute> list) {
    for (Attribute a : list) bits_ |= static_cast<unsigned>(a);
  }
  bool has(Attribute a) const { return (bits_ & static_cast<unsigned>(a)) != 0; }
  std::vector<std::string> names() const;

 private:
  unsigned bits_ = 0;
};

using MatrixField = std::function<Matrix(const Vector&)>;
using JetField = std::function<MatrixSlices(const Vector&)>;

enum class FieldKind { Metric, ComplexStructure };

// Finite-difference controls shared by every module that differentiates fields.
struct NumericOptions {
  double fd_step = 1e-5;      // first derivatives
  double second_step = 1e-4;  // nested differences (curvature, d omega)
  bool richardson = false;
};

// Local model of an almost Hermitian manifold (M^{2n}, J, g) on a single chart.
// Field closures must be re-entrant; the patch itself is immutable.
class ManifoldPatch {
 public:
  ManifoldPatch(int n, Box domain, MatrixField metric, MatrixField complex_structure,
                std::string label);

  ManifoldPatch with_metric_jet(JetField jet) const;
  ManifoldPatch with_j_jet(JetField jet) const;
  // Restricts the chart further to the open ball |u| < radius.
  ManifoldPatch with_chart_radius(double radius) const;
  ManifoldPatch with_attributes(Attributes attributes) const;

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const Box& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  const Attributes& attributes() const { return attributes_; }
  std::optional<double> chart_radius() const { return chart_radius_; }

  Matrix metric(const Vector& u) const { return metric_(u); }
  Matrix j(const Vector& u) const { return j_(u); }
  bool has_jet(FieldKind which) const;
  MatrixSlices jet(FieldKind which, const Vector& u) const;
  Matrix field(FieldKind which, const Vector& u) const;

  bool is_interior(const Vector& u, double margin) const;
  // Throws ChartOverflow outside the chart ball, BoundaryProximity when the
  // point is outside the box or closer than `margin` to its boundary.
  void require_interior(const Vector& u, double margin) const;

 private:
  int n_;
  Box domain_;
  MatrixField metric_;
  MatrixField j_;
  JetField metric_jet_;
  JetField j_jet_;
  std::optional<double> chart_radius_;
  Attributes attributes_;
  std::string label_;
};

struct InvariantResiduals {
  double metric_asymmetry = 0.0;
  double min_metric_eigenvalue = 0.0;
  double j_square = 0.0;       // max |J^2 + I|
  double compatibility = 0.0;  // max |J^T g J - g|

  bool ok(double tol = 1e-10) const {
    return metric_asymmetry < tol && min_metric_eigenvalue > 0.0 && j_square < tol &&
           compatibility < tol;
  }
};

InvariantResiduals check_invariants(const ManifoldPatch& patch, const Vector& u);

// Max |jet - central FD| at u; zero when the patch carries no jet for `which`.
double jet_residual(const ManifoldPatch& patch, const Vector& u, FieldKind which, double step);

// d_c F_{ab} from the analytic jet when present, else central differences.
// With `richardson` the FD estimate is extrapolated from steps h and h/2.
MatrixSlices field_derivative(const ManifoldPatch& patch, const Vector& u, FieldKind which,
                              double step, bool richardson = false);

// gamma[c](a, b) = Christoffel symbol of the second kind, symmetric in (a, b).
MatrixSlices christoffel(const ManifoldPatch& patch, const Vector& u, double step = 1e-5,
                         bool richardson = false);

// Orthonormal frame with e_{n+k} = J e_k, stored column-wise in coordinates.
struct AdaptedFrame {
  Vector point;
  Matrix basis;
  Matrix seed;
  std::vector<int> pivots;  // seed column consumed for each e_k, k < n

  int dim() const { return static_cast<int>(basis.cols()); }
  int n() const { return dim() / 2; }
  // Row A holds theta_A(d_b) = g(d_b, e_A).
  Matrix coframe(const Matrix& metric) const { return basis.transpose() * metric; }
};

// J-adapted Gram-Schmidt on the seed columns (identity by default). A seed
// column whose projected residual falls below 1e-8 is skipped; DegeneratePivot
// is raised only when the seed runs out.
AdaptedFrame adapt_frame(const ManifoldPatch& patch, const Vector& u,
                         const std::optional<Matrix>& seed = std::nullopt);

double orthonormality_residual(const AdaptedFrame& frame, const Matrix& metric);

// exp of the u(n) part 1/2 (X - J0 X J0) of a skew matrix X: an element of U(n)
// inside SO(2n).
Matrix unitary_from_generator(const Matrix& skew);
double adaptation_residual(const AdaptedFrame& frame, const Matrix& complex_structure);

}  // namespace ahv
