#include "ahv/coefficients.hpp"

#include <algorithm>
#include <cmath>

namespace ahv {

double AlphaBetaTable::antisymmetry_residual() const {
  const int nn = n();
  const int dim = alpha.extent(2);
  double worst = 0.0;
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j)
      for (int a = 0; a < dim; ++a) {
        worst = std::max(worst, std::abs(alpha(i, j, a) + alpha(j, i, a)));
        worst = std::max(worst, std::abs(beta(i, j, a) + beta(j, i, a)));
      }
  return worst;
}

StructureCoefficients StructureCoefficients::zero(int n) {
  return StructureCoefficients{Array3({n, n, n}), Array3({n, n, n}), Array3({n, n, n}),
                               Array3({n, n, n}), Matrix::Zero(n, n)};
}

void StructureCoefficients::refresh_derived() {
  const int nn = n();
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j)
      for (int k = 0; k < nn; ++k) {
        d(i, j, k) = c(i, j, k) - c(j, i, k);
        dp(i, j, k) = cp(i, j, k) - cp(j, i, k);
      }
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j) {
      double s = 0.0;
      for (int k = 0; k < nn; ++k) s += c(k, i, j) * c(k, i, j) + cp(k, i, j) * cp(k, i, j);
      a_row(i, j) = std::sqrt(s);
    }
}

AlphaBetaTable alpha_beta(const ConnectionTable& table) {
  const int n = table.n();
  const int dim = table.dim();
  AlphaBetaTable ab{Array3({n, n, dim}), Array3({n, n, dim})};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < dim; ++a) {
        ab.alpha(i, j, a) = table.omega(i, j + n, a) + table.omega(i + n, j, a);
        ab.beta(i, j, a) = table.omega(i + n, j + n, a) - table.omega(i, j, a);
      }
  return ab;
}

StructureCoefficients structure_coefficients(const AlphaBetaTable& ab) {
  const int n = ab.n();
  StructureCoefficients out = StructureCoefficients::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        out.c(i, j, k) = ab.alpha(j, k, i + n) + ab.beta(j, k, i);
        out.cp(i, j, k) = ab.alpha(j, k, i) - ab.beta(j, k, i + n);
      }
  out.refresh_derived();
  return out;
}

}  // namespace ahv
