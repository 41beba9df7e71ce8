#include "ahv/algebra.hpp"

#include <sstream>

#include "ahv/errors.hpp"

namespace ahv::algebra {

namespace {

Rational sq(const Rational& x) { return x * x; }

struct Sums {
  Rational c2, d2;
};

}  // namespace

RationalMatrix RationalMatrix::identity(int dim) {
  RationalMatrix m(dim, dim);
  for (int k = 0; k < dim; ++k) m(k, k) = 1;
  return m;
}

RationalMatrix RationalMatrix::complex_structure(int n) {
  RationalMatrix m(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    m(k, n + k) = -1;
    m(n + k, k) = 1;
  }
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Rational RationalMatrix::trace() const {
  Rational s = 0;
  for (int k = 0; k < std::min(rows_, cols_); ++k) s += (*this)(k, k);
  return s;
}

bool RationalMatrix::is_zero() const {
  for (const Rational& v : data_)
    if (sgn(v) != 0) return false;
  return true;
}

bool RationalMatrix::is_skew() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r; c < cols_; ++c)
      if ((*this)(r, c) != -(*this)(c, r)) return false;
  return true;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
  return out;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
  return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows_, b.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (int k = 0; k < a.cols_; ++k) {
      const Rational& x = a(r, k);
      if (sgn(x) == 0) continue;
      for (int c = 0; c < b.cols_; ++c)
        if (sgn(b(k, c)) != 0) out(r, c) += x * b(k, c);
    }
  return out;
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& a) {
  RationalMatrix out(a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = s * a.data_[k];
  return out;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RationalMatrix j0_times(const RationalMatrix& m) {
  const int n = m.rows() / 2;
  RationalMatrix out(m.rows(), m.cols());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < m.cols(); ++c) {
      out(r, c) = -m(r + n, c);
      out(r + n, c) = m(r, c);
    }
  return out;
}

RationalMatrix times_j0(const RationalMatrix& m) {
  const int n = m.cols() / 2;
  RationalMatrix out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < n; ++c) {
      out(r, c) = m(r, c + n);
      out(r, c + n) = -m(r, c);
    }
  return out;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-1'000'000, 1'000'000);
  std::uniform_int_distribution<long> den(1, 1'000);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

RationalSkewMatrix::RationalSkewMatrix(RationalMatrix m) : m_(std::move(m)) {
  if (!m_.is_skew()) throw Error(ErrorCode::InvalidArgument, "matrix is not skew-symmetric");
}

RationalSkewMatrix RationalSkewMatrix::random(int dim, std::mt19937_64& rng) {
  RationalSkewMatrix out(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = r + 1; c < dim; ++c) out.set(r, c, random_rational(rng));
  return out;
}

RationalSkewMatrix RationalSkewMatrix::elementary(int dim, int a, int b) {
  RationalSkewMatrix out(dim);
  out.set(a, b, 1);
  return out;
}

void RationalSkewMatrix::set(int r, int c, const Rational& value) {
  if (r == c && sgn(value) != 0)
    throw Error(ErrorCode::InvalidArgument, "skew matrix diagonal must vanish");
  m_(r, c) = value;
  m_(c, r) = -value;
}

RationalCTensor::RationalCTensor(int n) : n_(n), c_(n * n * n), cp_(n * n * n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "tensor size must be positive");
}

RationalCTensor RationalCTensor::random(int n, std::mt19937_64& rng) {
  RationalCTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        t.set_c(i, j, k, random_rational(rng));
        t.set_cp(i, j, k, random_rational(rng));
      }
  return t;
}

void RationalCTensor::assign(std::vector<Rational>& dst, int i, int j, int k,
                             const Rational& value) {
  if (j == k && sgn(value) != 0)
    throw Error(ErrorCode::InvalidArgument, "C_{ijj} must vanish by antisymmetry");
  dst[index(i, j, k)] = value;
  dst[index(i, k, j)] = -value;
}

void RationalCTensor::set_c(int i, int j, int k, const Rational& value) {
  assign(c_, i, j, k, value);
}

void RationalCTensor::set_cp(int i, int j, int k, const Rational& value) {
  assign(cp_, i, j, k, value);
}

Rational RationalArray3::squared_sum() const {
  Rational s = 0;
  for (const Rational& v : data) s += v * v;
  return s;
}

DTensors d_from_c(const RationalCTensor& t) {
  const int n = t.n();
  DTensors out{RationalArray3(n), RationalArray3(n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        out.d(i, j, k) = t.c(i, j, k) - t.c(j, i, k);
        out.dp(i, j, k) = t.cp(i, j, k) - t.cp(j, i, k);
      }
  return out;
}

std::string Triple::to_string() const {
  std::ostringstream os;
  os << "(" << i + 1 << "," << j + 1 << "," << k + 1 << ")";
  return os.str();
}

CheckResult check_identity_c1(const RationalCTensor& t) {
  const int n = t.n();
  const DTensors dt = d_from_c(t);
  // The second and third equations at (i, j, k) are the first one at (j, k, i) and
  // (k, i, j), so ranging over every triple covers all three.
  auto holds = [n](auto c_of, const RationalArray3& d) -> std::optional<Triple> {
    Rational rhs;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          rhs = d(i, j, k) - d(j, k, i) + d(k, i, j);
          if (2 * c_of(i, j, k) != rhs) return Triple{i, j, k};
        }
    return std::nullopt;
  };
  CheckResult r;
  if (auto bad = holds([&t](int i, int j, int k) -> const Rational& { return t.c(i, j, k); }, dt.d)) {
    r.ok = false;
    r.counterexample = bad;
    r.detail = "C identity fails at " + bad->to_string();
  } else if (auto bad_p = holds([&t](int i, int j, int k) -> const Rational& { return t.cp(i, j, k); }, dt.dp)) {
    r.ok = false;
    r.counterexample = bad_p;
    r.detail = "C' identity fails at " + bad_p->to_string();
  }
  return r;
}

Case1Result check_case1_inequality(const RationalCTensor& t) {
  const int n = t.n();
  const DTensors dt = d_from_c(t);
  Case1Result r;

  auto sweep = [&](auto c_of, const RationalArray3& d, const char* name) {
    Sums total;
    Rational lhs, squares, expansion;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          total.c2 += sq(c_of(i, j, k));
          total.d2 += sq(d(i, j, k));
          // Every per-triple quantity is invariant under cyclic rotation; visit
          // one representative per rotation class.
          if (!(i <= j && i <= k) || (i == k && i < j)) continue;
          const Rational& a = d(i, j, k);
          const Rational& b = d(j, k, i);
          const Rational& c = d(k, i, j);
          lhs = 4 * (sq(c_of(i, j, k)) + sq(c_of(j, k, i)) + sq(c_of(k, i, j)));
          squares = sq(a) + sq(b) + sq(c);
          expansion = 3 * squares - 2 * (a * b + a * c + b * c);
          // Divide only when the ratio actually improves.
          if (sgn(squares) != 0 && lhs > r.worst_ratio * squares) r.worst_ratio = lhs / squares;
          if (r.ok && (lhs != expansion || lhs > 5 * squares)) {
            r.ok = false;
            r.counterexample = Triple{i, j, k};
            r.detail = std::string(name) + " per-triple expansion/bound fails at " +
                       Triple{i, j, k}.to_string();
          }
        }
    if (r.ok && 4 * total.c2 > 5 * total.d2) {
      r.ok = false;
      r.detail = std::string(name) + " aggregate 5/4 bound fails";
    }
  };
  sweep([&t](int i, int j, int k) -> const Rational& { return t.c(i, j, k); }, dt.d, "C");
  sweep([&t](int i, int j, int k) -> const Rational& { return t.cp(i, j, k); }, dt.dp, "C'");
  return r;
}

CheckResult check_case2_identities(const RationalCTensor& t) {
  if (t.n() != 2) throw Error(ErrorCode::InvalidArgument, "case 2 identities need n = 2");
  const DTensors dt = d_from_c(t);
  Rational c2 = 0, cp2 = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        c2 += sq(t.c(i, j, k));
        cp2 += sq(t.cp(i, j, k));
      }
  const Rational pair = 2 * (sq(dt.d(0, 1, 0)) + sq(dt.d(1, 0, 1)));
  const Rational pair_p = 2 * (sq(dt.dp(0, 1, 0)) + sq(dt.dp(1, 0, 1)));
  CheckResult r;
  if (!(c2 == pair && pair == dt.d.squared_sum())) {
    r.ok = false;
    r.detail = "sum C^2 = " + c2.get_str() + ", 2(d121^2 + d212^2) = " + pair.get_str() +
               ", sum d^2 = " + dt.d.squared_sum().get_str();
  } else if (!(cp2 == pair_p && pair_p == dt.dp.squared_sum())) {
    r.ok = false;
    r.detail = "primed case 2 identity fails: sum C'^2 = " + cp2.get_str();
  }
  return r;
}

SkewSplit skew_decompose(const RationalSkewMatrix& omega) {
  const RationalMatrix twisted = times_j0(j0_times(omega.matrix()));
  const Rational half(1, 2);
  return SkewSplit{RationalSkewMatrix(half * (omega.matrix() - twisted)),
                   RationalSkewMatrix(half * (omega.matrix() + twisted))};
}

Rational so_pairing(const RationalMatrix& p, const RationalMatrix& q) {
  Rational s = 0;
  for (int r = 0; r < p.rows(); ++r)
    for (int k = 0; k < p.cols(); ++k) s -= p(r, k) * q(k, r);
  return s;
}

std::pair<RationalSkewMatrix, RationalRow> canonical_j1(const RationalSkewMatrix& psi,
                                                        const RationalRow& v) {
  const int dim = psi.dim();
  if (static_cast<int>(v.size()) != dim)
    throw Error(ErrorCode::InvalidArgument, "vector length must equal 2n");
  if (!(times_j0(psi.matrix()) + j0_times(psi.matrix())).is_zero())
    throw Error(ErrorCode::NotInSigma, "psi does not anticommute with J0");
  // -V J0: (V J0)_c = V_{c+n} for c < n and -V_{c-n} otherwise.
  const int n = dim / 2;
  RationalRow out(dim);
  for (int c = 0; c < n; ++c) {
    out[c] = -v[c + n];
    out[c + n] = v[c];
  }
  return {RationalSkewMatrix(j0_times(psi.matrix())), std::move(out)};
}

WedgeSides wedge_identity_sides(const RationalSkewMatrix& p, const RationalSkewMatrix& q) {
  const int n = p.dim() / 2;
  Rational lhs = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      lhs += p(i, j) * q(j, i + n) - q(i, j) * p(j, i + n);
      lhs += p(i, j + n) * q(j + n, i + n) - q(i, j + n) * p(j + n, i + n);
    }
  auto alpha = [n](const RationalSkewMatrix& m, int i, int j) { return m(i, j + n) + m(i + n, j); };
  auto beta = [n](const RationalSkewMatrix& m, int i, int j) { return m(i + n, j + n) - m(i, j); };
  Rational wedge = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      wedge += alpha(p, i, j) * beta(q, i, j) - alpha(q, i, j) * beta(p, i, j);
  return WedgeSides{lhs, Rational(-1, 2) * wedge};
}

bool check_wedge_identity(const RationalSkewMatrix& p, const RationalSkewMatrix& q) {
  const WedgeSides s = wedge_identity_sides(p, q);
  return s.lhs == s.rhs;
}

}  // namespace ahv::algebra
