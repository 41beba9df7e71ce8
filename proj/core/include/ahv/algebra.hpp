#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ahv::algebra {

using Rational = mpq_class;

// Dense rational matrix; only the operations the identity checks need.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(int dim);
  // [[0, -I], [I, 0]]
  static RationalMatrix complex_structure(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  Rational trace() const;
  bool is_zero() const;
  bool is_skew() const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

// J0 M and M J0 as signed row / column permutations (no multiplications).
RationalMatrix j0_times(const RationalMatrix& m);
RationalMatrix times_j0(const RationalMatrix& m);

// Uniform numerator in [-10^6, 10^6], denominator in [1, 10^3].
Rational random_rational(std::mt19937_64& rng);

class RationalSkewMatrix {
 public:
  explicit RationalSkewMatrix(int dim) : m_(dim, dim) {}
  // Throws InvalidArgument unless `m` is exactly skew.
  explicit RationalSkewMatrix(RationalMatrix m);

  static RationalSkewMatrix random(int dim, std::mt19937_64& rng);
  // e_a e_b^T - e_b e_a^T
  static RationalSkewMatrix elementary(int dim, int a, int b);

  int dim() const { return m_.rows(); }
  const Rational& operator()(int r, int c) const { return m_(r, c); }
  // Sets (r, c) and mirrors -value into (c, r).
  void set(int r, int c, const Rational& value);
  const RationalMatrix& matrix() const { return m_; }

 private:
  RationalMatrix m_;
};

// Free model of C and C' (antisymmetric in the last two indices).
class RationalCTensor {
 public:
  explicit RationalCTensor(int n);

  static RationalCTensor random(int n, std::mt19937_64& rng);

  int n() const { return n_; }
  const Rational& c(int i, int j, int k) const { return c_[index(i, j, k)]; }
  const Rational& cp(int i, int j, int k) const { return cp_[index(i, j, k)]; }
  // Sets C_{ijk} and C_{ikj} = -value.
  void set_c(int i, int j, int k, const Rational& value);
  void set_cp(int i, int j, int k, const Rational& value);

 private:
  int index(int i, int j, int k) const { return (i * n_ + j) * n_ + k; }
  void assign(std::vector<Rational>& dst, int i, int j, int k, const Rational& value);

  int n_;
  std::vector<Rational> c_;
  std::vector<Rational> cp_;
};

struct RationalArray3 {
  int n = 0;
  std::vector<Rational> data;

  explicit RationalArray3(int size) : n(size), data(size * size * size) {}
  Rational& operator()(int i, int j, int k) { return data[(i * n + j) * n + k]; }
  const Rational& operator()(int i, int j, int k) const { return data[(i * n + j) * n + k]; }
  Rational squared_sum() const;
};

struct DTensors {
  RationalArray3 d;
  RationalArray3 dp;
};

// d_{ijk} = C_{ijk} - C_{jik}, likewise for the primed tensor.
DTensors d_from_c(const RationalCTensor& t);

struct Triple {
  int i = 0, j = 0, k = 0;
  std::string to_string() const;
};

struct CheckResult {
  bool ok = true;
  std::optional<Triple> counterexample;
  std::string detail;
};

// 2 C_{ijk} = d_{ijk} - d_{jki} + d_{kij} and its two cyclic companions, for C and C'.
CheckResult check_identity_c1(const RationalCTensor& t);

struct Case1Result {
  bool ok = true;
  // max over triples of 4 (C_ijk^2 + C_jki^2 + C_kij^2) / (d_ijk^2 + d_jki^2 + d_kij^2),
  // over both tensors; 0 when every denominator vanishes.
  Rational worst_ratio = 0;
  std::optional<Triple> counterexample;
  std::string detail;
};

// Per-triple expansion equality, per-triple bound by 5 sum d^2, and the aggregate
// sum C^2 <= 5/4 sum d^2 (and primed).
Case1Result check_case1_inequality(const RationalCTensor& t);

// n = 2: sum C^2 = 2 (d_121^2 + d_212^2) = sum d^2, and primed.
CheckResult check_case2_identities(const RationalCTensor& t);

struct SkewSplit {
  RationalSkewMatrix u_part;      // commutes with J0
  RationalSkewMatrix sigma_part;  // anticommutes with J0
};

SkewSplit skew_decompose(const RationalSkewMatrix& omega);

// -tr(PQ)
Rational so_pairing(const RationalMatrix& p, const RationalMatrix& q);

using RationalRow = std::vector<Rational>;

// (psi, V) -> (J0 psi, -V J0). Throws NotInSigma unless psi J0 = -J0 psi.
std::pair<RationalSkewMatrix, RationalRow> canonical_j1(const RationalSkewMatrix& psi,
                                                        const RationalRow& v);

struct WedgeSides {
  Rational lhs;
  Rational rhs;
};

// Both sides of sum_{ij}(w_ij ^ w_{j,i+n} + w_{i,j+n} ^ w_{j+n,i+n}) = -1/2 sum alpha_ij ^ beta_ij
// evaluated on the pair (P, Q) = (omega(X), omega(Y)).
WedgeSides wedge_identity_sides(const RationalSkewMatrix& p, const RationalSkewMatrix& q);
bool check_wedge_identity(const RationalSkewMatrix& p, const RationalSkewMatrix& q);

}  // namespace ahv::algebra
