#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace ahv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// One matrix per coordinate direction: slices[c](a, b) = d_c F_{ab}.
using MatrixSlices = std::vector<Matrix>;

// Dense row-major array with a fixed number of axes. Indices are 0-based.
template <std::size_t Rank>
class DenseArray {
 public:
  DenseArray() = default;

  explicit DenseArray(std::array<int, Rank> extents) : extents_(extents) {
    std::size_t total = 1;
    for (int e : extents_) total *= static_cast<std::size_t>(e);
    data_.assign(total, 0.0);
  }

  template <typename... Idx>
  double& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }

  template <typename... Idx>
  double operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }

  int extent(std::size_t axis) const { return extents_[axis]; }
  const std::array<int, Rank>& extents() const { return extents_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double squared_sum() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return s;
  }

 private:
  std::size_t offset(std::array<int, Rank> idx) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < Rank; ++k) off = off * extents_[k] + idx[k];
    return off;
  }

  std::array<int, Rank> extents_{};
  std::vector<double> data_;
};

using Array3 = DenseArray<3>;
using Array4 = DenseArray<4>;

inline double max_abs_diff(const Array3& a, const Array3& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

// Standard complex structure [[0, -I], [I, 0]] on R^{2n}.
inline Matrix standard_complex_structure(int n) {
  Matrix j0 = Matrix::Zero(2 * n, 2 * n);
  j0.block(0, n, n, n) = -Matrix::Identity(n, n);
  j0.block(n, 0, n, n) = Matrix::Identity(n, n);
  return j0;
}

}  // namespace ahv
