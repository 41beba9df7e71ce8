#include "ahv/catalog.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ahv {

namespace {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

constexpr double kSphereChartRadius = 0.9;

// Oriented triples (a, b, c) with e_a e_b = e_c, 1-based.
constexpr std::array<std::array<int, 3>, 7> kFanoTriples = {{
    {1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 4, 7}, {1, 7, 6}, {2, 5, 7}, {3, 6, 5},
}};

MatrixSlices zero_jet(int dim) { return MatrixSlices(dim, Matrix::Zero(dim, dim)); }

// d x / d u for the inverse stereographic map, 7 x 6.
Eigen::Matrix<double, 7, 6> stereographic_jacobian(const Vector& u) {
  const double r2 = u.squaredNorm();
  const double s = 1.0 + r2;
  Eigen::Matrix<double, 7, 6> jac;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) jac(i, j) = (i == j ? 2.0 / s : 0.0) - 4.0 * u[i] * u[j] / (s * s);
  for (int j = 0; j < 6; ++j) jac(6, j) = -4.0 * u[j] / (s * s);
  return jac;
}

double parse_double(std::string_view text, std::string_view id) {
  std::istringstream is{std::string(text)};
  double value = 0.0;
  is >> value;
  if (!is || !is.eof())
    throw Error(ErrorCode::InvalidArgument, "bad number '" + std::string(text) + "' in manifold id '" +
                                                std::string(id) + "'");
  return value;
}

int parse_int(std::string_view text, std::string_view id) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::InvalidArgument, "bad integer '" + std::string(text) +
                                                "' in manifold id '" + std::string(id) + "'");
  return value;
}

// Shortest text that parses back to the same double.
std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

Mat7 cross_product_matrix(const Vec7& p) {
  Mat7 l = Mat7::Zero();
  // (p x X)_c = sum eps_{abc} p_a X_b
  for (const auto& t : kFanoTriples) {
    const int a = t[0] - 1, b = t[1] - 1, c = t[2] - 1;
    const std::array<std::array<int, 3>, 3> cyclic = {{{a, b, c}, {b, c, a}, {c, a, b}}};
    for (const auto& [x, y, z] : cyclic) {
      l(z, y) += p[x];
      l(y, z) -= p[x];
    }
  }
  return l;
}

Vec7 cross7(const Vec7& x, const Vec7& y) { return cross_product_matrix(x) * y; }

Vec7 sphere_point(const Vector& u) {
  const double r2 = u.squaredNorm();
  Vec7 x;
  for (int i = 0; i < 6; ++i) x[i] = 2.0 * u[i] / (1.0 + r2);
  x[6] = (1.0 - r2) / (1.0 + r2);
  return x;
}

CatalogEntry flat_kahler(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "flat_kahler needs n >= 2");
  const int dim = 2 * n;
  const Matrix j0 = standard_complex_structure(n);
  ManifoldPatch patch =
      ManifoldPatch(
          n, Box::cube(dim, -1.0, 1.0), [dim](const Vector&) { return Matrix::Identity(dim, dim); },
          [j0](const Vector&) { return j0; }, "flat:" + std::to_string(n))
          .with_metric_jet([dim](const Vector&) { return zero_jet(dim); })
          .with_j_jet([dim](const Vector&) { return zero_jet(dim); })
          .with_attributes({Attribute::Integrable, Attribute::Flat});
  return CatalogEntry{"flat:" + std::to_string(n), std::move(patch), {0.0, 1.0}, {}};
}

CatalogEntry conformal_hermitian() {
  const Matrix j0 = standard_complex_structure(2);
  ManifoldPatch patch =
      ManifoldPatch(
          2, Box::cube(4, 0.5, 2.5),
          [](const Vector& u) { return Matrix(Matrix::Identity(4, 4) / u.squaredNorm()); },
          [j0](const Vector&) { return j0; }, "conformal4")
          .with_metric_jet([](const Vector& u) {
            const double r2 = u.squaredNorm();
            MatrixSlices out(4);
            for (int c = 0; c < 4; ++c) out[c] = Matrix::Identity(4, 4) * (-2.0 * u[c] / (r2 * r2));
            return out;
          })
          .with_j_jet([](const Vector&) { return zero_jet(4); })
          .with_attributes({Attribute::Integrable});
  return CatalogEntry{"conformal4", std::move(patch), {0.0, std::nullopt}, {}};
}

CatalogEntry nearly_kahler_s6() {
  const double half_width = kSphereChartRadius / std::sqrt(6.0);
  auto metric = [](const Vector& u) {
    const double s = 1.0 + u.squaredNorm();
    return Matrix(Matrix::Identity(6, 6) * (4.0 / (s * s)));
  };
  auto complex_structure = [](const Vector& u) {
    if (u.norm() >= kSphereChartRadius)
      throw Error(ErrorCode::ChartOverflow, "stereographic chart limited to |u| < 0.9");
    const Eigen::Matrix<double, 7, 6> jac = stereographic_jacobian(u);
    const double s = 1.0 + u.squaredNorm();
    // pull back X -> p x X through the conformal chart: J = (s^2 / 4) D^T L_p D
    return Matrix((s * s / 4.0) * jac.transpose() * cross_product_matrix(sphere_point(u)) * jac);
  };
  ManifoldPatch patch = ManifoldPatch(3, Box::cube(6, -half_width, half_width), metric,
                                      complex_structure, "nk-s6")
                            .with_chart_radius(kSphereChartRadius)
                            .with_attributes({Attribute::UnitRoundSphere, Attribute::NearlyKahler});
  return CatalogEntry{"nk-s6", std::move(patch), {}, {{"octonion_table", "123,145,246,347,176,257,365"}}};
}

CatalogEntry perturbed_torus(double eps, int freq) {
  if (!(eps >= 0.0 && eps <= 0.5)) throw Error(ErrorCode::InvalidArgument, "eps must lie in [0, 0.5]");
  if (freq < 1) throw Error(ErrorCode::InvalidArgument, "freq must be >= 1");
  const int n = 3;
  const int dim = 2 * n;
  const Matrix j0 = standard_complex_structure(n);
  Matrix gen = Matrix::Zero(dim, dim);
  gen(0, 2) = 1.0;
  gen(2, 0) = -1.0;

  // G^3 = -G, so exp(t G) = I + sin t G + (1 - cos t) G^2.
  auto rotation = [gen, dim](double t) {
    return Matrix(Matrix::Identity(dim, dim) + std::sin(t) * gen + (1.0 - std::cos(t)) * gen * gen);
  };
  auto complex_structure = [=](const Vector& u) {
    const Matrix r = rotation(eps * std::sin(freq * u[0]));
    return Matrix(r * j0 * r.transpose());
  };
  auto j_jet = [=](const Vector& u) {
    MatrixSlices out = zero_jet(dim);
    const Matrix j = complex_structure(u);
    out[0] = eps * freq * std::cos(freq * u[0]) * (gen * j - j * gen);
    return out;
  };

  std::ostringstream id;
  id << "torus:eps=" << format_number(eps) << ",freq=" << freq;
  const double pi = std::numbers::pi;
  ManifoldPatch patch =
      ManifoldPatch(
          n, Box::cube(dim, -pi, pi), [dim](const Vector&) { return Matrix::Identity(dim, dim); },
          complex_structure, id.str())
          .with_metric_jet([dim](const Vector&) { return zero_jet(dim); })
          .with_j_jet(j_jet);
  CatalogEntry entry{id.str(), std::move(patch), {}, {}};
  entry.metadata["generator"] = "e1 e3^T - e3 e1^T";
  entry.metadata["eps"] = format_number(eps);
  entry.metadata["freq"] = std::to_string(freq);
  if (eps == 0.0) entry.expected = {0.0, 1.0};
  return entry;
}

CatalogEntry catalog_entry(std::string_view id) {
  if (id == "conformal4") return conformal_hermitian();
  if (id == "nk-s6") return nearly_kahler_s6();
  if (id.starts_with("flat:")) return flat_kahler(parse_int(id.substr(5), id));
  if (id.starts_with("torus:")) {
    std::optional<double> eps;
    std::optional<int> freq;
    std::string_view rest = id.substr(6);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) break;
      const std::string_view key = item.substr(0, eq);
      const std::string_view value = item.substr(eq + 1);
      if (key == "eps") eps = parse_double(value, id);
      else if (key == "freq") freq = parse_int(value, id);
      else throw Error(ErrorCode::InvalidArgument, "unknown torus parameter '" + std::string(key) + "'");
    }
    if (!eps || !freq)
      throw Error(ErrorCode::InvalidArgument, "torus id needs eps=<r>,freq=<k>: '" + std::string(id) + "'");
    return perturbed_torus(*eps, *freq);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown manifold id '" + std::string(id) + "'");
}

}  // namespace ahv
