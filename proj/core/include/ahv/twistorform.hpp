#pragma once

#include <optional>

#include "ahv/coefficients.hpp"
#include "ahv/connection.hpp"
#include "ahv/geometry.hpp"
#include "ahv/nijenhuis.hpp"

namespace ahv {

// F(A, B) = phi(e_A, e_B) for the pulled-back twistor Kahler form phi.
struct TwistorFormMatrix {
  Matrix f;
  Vector point;

  double skew_residual() const { return (f + f.transpose()).cwiseAbs().maxCoeff(); }
};

// phi = 1/2 sum_{i,j} alpha_{ij} ^ beta_{ij} + sum_i theta_i ^ theta_{i+n}; the double
// sum runs over all ordered pairs and (a ^ b)(X, Y) = a(X) b(Y) - a(Y) b(X).
TwistorFormMatrix phi_matrix(const AlphaBetaTable& ab, const Vector& point = {});

// phi(X, Y) = 1/4 <(J0 w - w J0)(X), (w + J0 w J0)(Y)> - theta(X) J0 . theta(Y)
// with <P, Q> = -tr(PQ) on so(2n).
TwistorFormMatrix phi_via_bundle_formula(const ConnectionTable& table, const Vector& point = {});

// min over unit X of phi(X, JX): smallest eigenvalue of sym(F J0).
double margin(const TwistorFormMatrix& form);

// Pfaffian by skew-symmetric LTL^T elimination with pivoting.
double pfaffian(const Matrix& skew);

struct Nondegeneracy {
  bool nondegenerate = false;
  // Sign of the Pfaffian in the basis (e_1, e_{n+1}, e_2, e_{n+2}, ...), so that
  // F = -J0 gives +1; 0 when degenerate.
  int pfaffian_sign = 0;
  double determinant = 0.0;
};

// Non-degenerate iff |det F| > 1e-12 * s^{2n} with s = max(1, max|F_AB|).
Nondegeneracy nondegenerate(const TwistorFormMatrix& form);

// 64/5 for n >= 3, 16 for n = 2.
double theorem_constant(int n);

struct ChainStatus {
  bool quarter_bound = false;      // margin >= 1 - 1/4 sum A^2
  bool coefficient_bound = false;  // sum C^2 <= 5/4 sum d^2 (n >= 3), equalities (n = 2)
  bool paper_bound = false;        // 1 - 1/4 sum A^2 >= 1 - c |N|^2
  bool theorem = false;            // |N|^2 < c0  =>  non-degenerate

  bool all() const { return quarter_bound && coefficient_bound && paper_bound && theorem; }
};

struct TheoremReport {
  Vector point;
  int n = 0;
  double norm_n2 = 0.0;
  double margin = 0.0;
  double sum_a2 = 0.0;
  double bound_quarter_a = 0.0;
  double bound_paper = 0.0;
  ChainStatus chain_ok;
  bool nondegenerate = false;
  int pfaffian_sign = 0;
  double determinant = 0.0;

  double structure_residual = 0.0;
  double phi_formula_mismatch = 0.0;
  double n_route_mismatch = 0.0;
};

struct ReportOptions {
  NumericOptions numeric;
  double tol = 1e-8;
  bool throw_on_violation = true;
  // Seed for adapt_frame; identity when empty.
  std::optional<Matrix> seed;
};

// Full pipeline frame -> omega -> alpha/beta -> C/d -> |N|^2 -> F -> margin.
// Throws ChainViolation (when enabled) naming the first failed inequality.
TheoremReport theorem_report(const ManifoldPatch& patch, const Vector& u,
                             const ReportOptions& options = {});

// max_{a,b} |sum_i d omega_{i,i+n}(d_a, d_b) + phi(d_a, d_b)|. Only meaningful on
// the unit round sphere; other patches raise WrongPatch.
double chern_identity_residual(const ManifoldPatch& patch, const Vector& u,
                               const NumericOptions& options = {});

}  // namespace ahv
