#pragma once

#include "ahv/connection.hpp"
#include "ahv/types.hpp"

namespace ahv {

// alpha_{ij} = omega_{i,j+n} + omega_{i+n,j},  beta_{ij} = omega_{i+n,j+n} - omega_{ij},
// evaluated on every frame vector: alpha(i, j, A) = alpha_{ij}(e_A).
struct AlphaBetaTable {
  Array3 alpha;
  Array3 beta;

  int n() const { return alpha.extent(0); }
  double antisymmetry_residual() const;
};

// Coefficients linking the connection to the Nijenhuis tensor and to the
// pulled-back twistor form. All indices run over 0..n-1.
struct StructureCoefficients {
  Array3 c;   // C_{ijk}  = alpha_{jk}^{i+n} + beta_{jk}^i
  Array3 cp;  // C'_{ijk} = alpha_{jk}^i - beta_{jk}^{i+n}
  Array3 d;   // d_{ijk}  = C_{ijk} - C_{jik}
  Array3 dp;  // d'_{ijk} = C'_{ijk} - C'_{jik}
  Matrix a_row;  // A_{ij} = sqrt(sum_k C_{kij}^2 + C'_{kij}^2)

  int n() const { return c.extent(0); }
  static StructureCoefficients zero(int n);
  // Rebuilds d, d' and A from c and cp.
  void refresh_derived();
};

AlphaBetaTable alpha_beta(const ConnectionTable& table);
StructureCoefficients structure_coefficients(const AlphaBetaTable& ab);

}  // namespace ahv
