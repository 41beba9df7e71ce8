#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ahv/geometry.hpp"

namespace ahv {

struct CatalogExpectations {
  std::optional<double> norm_n2;
  std::optional<double> margin;
};

struct CatalogEntry {
  std::string id;
  ManifoldPatch patch;
  CatalogExpectations expected;
  std::map<std::string, std::string> metadata;

  const Attributes& attributes() const { return patch.attributes(); }
};

// g = I, J = J0 on [-1, 1]^{2n}.
CatalogEntry flat_kahler(int n);

// g = |u|^{-2} I, J = J0 on [0.5, 2.5]^4: integrable, not Kahler.
CatalogEntry conformal_hermitian();

// Round unit S^6 in the stereographic chart with J X = p x X (octonionic cross
// product). The chart is the cube inscribed in the ball |u| < 0.9.
CatalogEntry nearly_kahler_s6();

// g = I on [-pi, pi]^6, J = R J0 R^T with R = exp(eps sin(freq u_1) G),
// G = e_1 e_3^T - e_3 e_1^T.
CatalogEntry perturbed_torus(double eps, int freq);

// Parses `flat:<n>`, `conformal4`, `nk-s6`, `torus:eps=<r>,freq=<k>`.
CatalogEntry catalog_entry(std::string_view id);

// Seven-dimensional cross product from the imaginary octonions with
// e1 e2 = e3, e1 e4 = e5, e2 e4 = e6, e3 e4 = e7.
Eigen::Matrix<double, 7, 7> cross_product_matrix(const Eigen::Matrix<double, 7, 1>& p);
Eigen::Matrix<double, 7, 1> cross7(const Eigen::Matrix<double, 7, 1>& x,
                                   const Eigen::Matrix<double, 7, 1>& y);

// Inverse stereographic projection of the chart onto the unit sphere in R^7.
Eigen::Matrix<double, 7, 1> sphere_point(const Vector& u);

}  // namespace ahv
