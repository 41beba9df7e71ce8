#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ahv/algebra.hpp"

namespace ahv::cli {

namespace {

using nlohmann::json;
namespace alg = ahv::algebra;

constexpr double kStructureTol = 1e-6;
constexpr double kCurvatureTol = 1e-4;
constexpr double kChernTol = 1e-4;
constexpr double kPhiTol = 1e-10;
constexpr double kRouteTol = 1e-6;
constexpr double kInvarianceTol = 1e-8;
constexpr long kMaxGridPoints = 10'000'000;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::BoundaryProximity:
    case ErrorCode::ChartOverflow:
    case ErrorCode::WrongPatch:
      return kExitUsage;
    default:
      return kExitCheckFailed;
  }
}

CommandOutput usage_error(const std::string& message) {
  return CommandOutput{kExitUsage, {}, message};
}

json point_json(const Vector& u) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < u.size(); ++k) arr.push_back(u[k]);
  return arr;
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) fn(k);
    });
}

std::string serialize_tensor(const alg::RationalCTensor& t) {
  std::ostringstream os;
  const int n = t.n();
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        os << (first ? "" : "; ") << "C" << i + 1 << j + 1 << k + 1 << "=" << t.c(i, j, k).get_str()
           << ", C'" << i + 1 << j + 1 << k + 1 << "=" << t.cp(i, j, k).get_str();
        first = false;
      }
  return os.str();
}

std::string serialize_matrix(const alg::RationalSkewMatrix& m) {
  std::ostringstream os;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = r + 1; c < m.dim(); ++c)
      if (sgn(m(r, c)) != 0) os << "[" << r + 1 << "," << c + 1 << "]=" << m(r, c).get_str() << " ";
  return os.str();
}

// Outcome of one randomized exact check: either every sample passes or the
// first failing sample is serialized.
struct SweepOutcome {
  long passed = 0;
  long failed = 0;
  std::string counterexample;
};

template <typename Sample>
SweepOutcome sweep(long samples, std::mt19937_64& rng, Sample&& sample) {
  SweepOutcome out;
  for (long s = 0; s < samples; ++s) {
    std::string failure = sample(rng);
    if (failure.empty()) {
      ++out.passed;
    } else {
      ++out.failed;
      if (out.counterexample.empty()) out.counterexample = failure;
    }
  }
  return out;
}

std::mt19937_64 check_rng(std::uint64_t seed, int n, int check) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(check)};
  return std::mt19937_64(seq);
}

}  // namespace

void ScanConfig::validate(int dim) const {
  if (grid < 1) throw Error(ErrorCode::InvalidArgument, "grid must be >= 1");
  if (std::pow(static_cast<double>(grid), dim) > static_cast<double>(kMaxGridPoints))
    throw Error(ErrorCode::InvalidArgument, "grid^dim exceeds 1e7 points");
  if (!(fd_step > 1e-8 && fd_step < 1e-2))
    throw Error(ErrorCode::InvalidArgument, "fd-step must lie in (1e-8, 1e-2)");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json report_to_json(const TheoremReport& r) {
  return json{
      {"point", point_json(r.point)},
      {"normN2", r.norm_n2},
      {"margin", r.margin},
      {"sumA2", r.sum_a2},
      {"bound_quarterA", r.bound_quarter_a},
      {"bound_paper", r.bound_paper},
      {"chain_ok",
       {{"a", r.chain_ok.quarter_bound},
        {"b", r.chain_ok.coefficient_bound},
        {"c", r.chain_ok.paper_bound},
        {"d", r.chain_ok.theorem}}},
      {"nondegenerate", r.nondegenerate},
      {"pfaffian_sign", r.pfaffian_sign},
      {"structure_residual", r.structure_residual},
      {"phi_formula_mismatch", r.phi_formula_mismatch},
      {"n_route_mismatch", r.n_route_mismatch},
  };
}

std::vector<Vector> grid_points(const ManifoldPatch& patch, int grid) {
  const int dim = patch.dim();
  const Box& box = patch.domain();
  long total = 1;
  for (int k = 0; k < dim; ++k) total *= grid;
  std::vector<Vector> out;
  out.reserve(total);
  std::vector<int> idx(dim, 0);
  for (long p = 0; p < total; ++p) {
    Vector u(dim);
    for (int k = 0; k < dim; ++k)
      u[k] = box.lower[k] + (idx[k] + 0.5) * (box.upper[k] - box.lower[k]) / grid;
    out.push_back(std::move(u));
    for (int k = dim - 1; k >= 0; --k) {
      if (++idx[k] < grid) break;
      idx[k] = 0;
    }
  }
  return out;
}

std::vector<Vector> random_points(const ManifoldPatch& patch, int count, std::mt19937_64& rng) {
  const Box& box = patch.domain();
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::vector<Vector> out;
  for (int p = 0; p < count; ++p) {
    Vector u(patch.dim());
    for (int k = 0; k < patch.dim(); ++k)
      u[k] = box.lower[k] + unit(rng) * (box.upper[k] - box.lower[k]);
    out.push_back(std::move(u));
  }
  return out;
}

Matrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x = Matrix::Zero(2 * n, 2 * n);
  for (int r = 0; r < 2 * n; ++r)
    for (int c = r + 1; c < 2 * n; ++c) {
      x(r, c) = normal(rng);
      x(c, r) = -x(r, c);
    }
  return unitary_from_generator(x);
}

InvarianceDeviation frame_invariance_deviation(const ManifoldPatch& patch, const Vector& u,
                                               const Matrix& unitary, const TheoremReport& base,
                                               const ReportOptions& options) {
  ReportOptions rotated = options;
  rotated.throw_on_violation = false;
  rotated.seed = adapt_frame(patch, u, options.seed).basis * unitary;
  const TheoremReport r = theorem_report(patch, u, rotated);
  InvarianceDeviation d;
  d.norm_n2 = relative_mismatch(r.norm_n2, base.norm_n2);
  d.margin = relative_mismatch(r.margin, base.margin);
  d.determinant = relative_mismatch(r.determinant, base.determinant);
  d.pfaffian_sign_changed = r.pfaffian_sign != base.pfaffian_sign;
  return d;
}

CommandOutput cmd_report(const std::string& manifold_id, const std::optional<Vector>& point,
                         double fd_step, double tol) {
  try {
    const CatalogEntry entry = catalog_entry(manifold_id);
    const Vector u = point.value_or(entry.patch.domain().center());
    entry.patch.require_interior(u, 2.0 * NumericOptions{}.second_step);
    ReportOptions options;
    options.numeric.fd_step = fd_step;
    options.tol = tol;
    options.throw_on_violation = false;
    const TheoremReport r = theorem_report(entry.patch, u, options);
    json doc = report_to_json(r);
    doc["manifold"] = entry.id;
    return CommandOutput{r.chain_ok.all() ? kExitOk : kExitCheckFailed, doc.dump(2) + "\n", {}};
  } catch (const Error& e) {
    return CommandOutput{exit_code_for(e), {}, e.what()};
  }
}

CommandOutput cmd_scan(const ScanConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  std::optional<CatalogEntry> entry;
  try {
    entry = catalog_entry(config.manifold_id);
    config.validate(entry->patch.dim());
  } catch (const Error& e) {
    return usage_error(e.what());
  }
  const ManifoldPatch& patch = entry->patch;
  const std::vector<Vector> points = grid_points(patch, config.grid);

  ReportOptions options;
  options.numeric.fd_step = config.fd_step;
  options.tol = config.tol;
  options.throw_on_violation = false;

  struct Row {
    std::optional<TheoremReport> report;
    std::string error;
  };
  std::vector<Row> rows(points.size());
  parallel_for(points.size(), [&](std::size_t k) {
    try {
      rows[k].report = theorem_report(patch, points[k], options);
    } catch (const Error& e) {
      rows[k].error = e.what();
    }
  });

  long violations = 0;
  long nondegenerate_count = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double max_norm = -std::numeric_limits<double>::infinity();
  double min_norm = std::numeric_limits<double>::infinity();
  std::string first_error;
  for (const Row& row : rows) {
    if (!row.report) {
      ++violations;
      if (first_error.empty()) first_error = row.error;
      continue;
    }
    const TheoremReport& r = *row.report;
    if (!r.chain_ok.all()) ++violations;
    if (r.nondegenerate) ++nondegenerate_count;
    min_margin = std::min(min_margin, r.margin);
    max_norm = std::max(max_norm, r.norm_n2);
    min_norm = std::min(min_norm, r.norm_n2);
  }

  json summary{{"manifold", entry->id},
               {"points", points.size()},
               {"min_margin", min_margin},
               {"max_normN2", max_norm},
               {"min_normN2", min_norm},
               {"nondegenerate_count", nondegenerate_count},
               {"chain_violations", violations}};

  std::ostringstream doc;
  if (config.format == OutputFormat::Csv) {
    for (int k = 0; k < patch.dim(); ++k) doc << "u" << k + 1 << ",";
    doc << "normN2,margin,bound_paper,chain_ok,nondegenerate\n";
    for (std::size_t p = 0; p < rows.size(); ++p) {
      for (int k = 0; k < patch.dim(); ++k) doc << format_double(points[p][k]) << ",";
      if (const auto& r = rows[p].report) {
        doc << format_double(r->norm_n2) << "," << format_double(r->margin) << ","
            << format_double(r->bound_paper) << "," << (r->chain_ok.all() ? 1 : 0) << ","
            << (r->nondegenerate ? 1 : 0) << "\n";
      } else {
        doc << "nan,nan,nan,0,0\n";
      }
    }
    doc << "# manifold=" << entry->id << "\n"
        << "# points=" << points.size() << "\n"
        << "# min_margin=" << format_double(min_margin) << "\n"
        << "# max_normN2=" << format_double(max_norm) << "\n"
        << "# min_normN2=" << format_double(min_norm) << "\n"
        << "# nondegenerate_count=" << nondegenerate_count << "\n"
        << "# chain_violations=" << violations << "\n";
  } else {
    json out{{"summary", summary}, {"rows", json::array()}};
    for (std::size_t p = 0; p < rows.size(); ++p) {
      json row{{"point", point_json(points[p])}};
      if (const auto& r = rows[p].report) {
        row["normN2"] = r->norm_n2;
        row["margin"] = r->margin;
        row["bound_paper"] = r->bound_paper;
        row["chain_ok"] = r->chain_ok.all();
        row["nondegenerate"] = r->nondegenerate;
      } else {
        row["error"] = rows[p].error;
      }
      out["rows"].push_back(std::move(row));
    }
    doc << out.dump(2) << "\n";
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  summary["wall_time_s"] = seconds;
  std::string diagnostics = summary.dump();
  if (!first_error.empty()) diagnostics += "\nfirst error: " + first_error;
  return CommandOutput{violations == 0 ? kExitOk : kExitCheckFailed, doc.str(), diagnostics};
}

CommandOutput cmd_verify_algebra(const std::vector<int>& n_list, long samples, std::uint64_t seed) {
  if (samples < 1) return usage_error("samples must be >= 1");
  if (n_list.empty()) return usage_error("n list must not be empty");
  for (int n : n_list)
    if (n < 2 || n > 6) return usage_error("each n must lie in [2, 6]");

  json results = json::array();
  bool all_ok = true;
  alg::Rational worst_ratio = 0;

  auto record = [&](int n, const char* name, const SweepOutcome& o) {
    json item{{"n", n}, {"check", name}, {"passed", o.passed}, {"failed", o.failed}};
    if (o.failed) {
      item["counterexample"] = o.counterexample;
      all_ok = false;
    }
    results.push_back(std::move(item));
  };

  for (int n : n_list) {
    const int dim = 2 * n;
    if (n >= 3) {
      auto rng = check_rng(seed, n, 1);
      record(n, "identity_c1", sweep(samples, rng, [n](std::mt19937_64& g) -> std::string {
               const auto t = alg::RationalCTensor::random(n, g);
               const auto r = alg::check_identity_c1(t);
               return r.ok ? "" : r.detail + " :: " + serialize_tensor(t);
             }));
      rng = check_rng(seed, n, 2);
      record(n, "case1_inequality", sweep(samples, rng, [&](std::mt19937_64& g) -> std::string {
               const auto t = alg::RationalCTensor::random(n, g);
               const auto r = alg::check_case1_inequality(t);
               if (r.worst_ratio > worst_ratio) worst_ratio = r.worst_ratio;
               return r.ok ? "" : r.detail + " :: " + serialize_tensor(t);
             }));
    }
    if (n == 2) {
      auto rng = check_rng(seed, n, 3);
      record(n, "case2_identities", sweep(samples, rng, [](std::mt19937_64& g) -> std::string {
               const auto t = alg::RationalCTensor::random(2, g);
               const auto r = alg::check_case2_identities(t);
               return r.ok ? "" : r.detail + " :: " + serialize_tensor(t);
             }));
    }
    auto rng = check_rng(seed, n, 4);
    record(n, "skew_decompose", sweep(samples, rng, [dim](std::mt19937_64& g) -> std::string {
             const auto omega = alg::RationalSkewMatrix::random(dim, g);
             const auto split = alg::skew_decompose(omega);
             const auto& up = split.u_part.matrix();
             const auto& sp = split.sigma_part.matrix();
             const bool ok = (alg::times_j0(up) == alg::j0_times(up)) &&
                             (alg::times_j0(sp) + alg::j0_times(sp)).is_zero() &&
                             (up + sp == omega.matrix()) && sgn(alg::so_pairing(up, sp)) == 0;
             return ok ? "" : "decomposition fails :: " + serialize_matrix(omega);
           }));
    rng = check_rng(seed, n, 5);
    record(n, "canonical_j1", sweep(samples, rng, [dim](std::mt19937_64& g) -> std::string {
             const auto psi = alg::skew_decompose(alg::RationalSkewMatrix::random(dim, g)).sigma_part;
             alg::RationalRow v(dim);
             for (auto& x : v) x = alg::random_rational(g);
             const auto once = alg::canonical_j1(psi, v);
             const auto& image = once.first.matrix();
             const bool closed = (alg::times_j0(image) + alg::j0_times(image)).is_zero();
             const auto twice = alg::canonical_j1(once.first, once.second);
             bool square = twice.first.matrix() == alg::Rational(-1) * psi.matrix();
             for (int k = 0; k < dim; ++k) square = square && twice.second[k] == -v[k];
             return closed && square ? "" : "J1^2 != -Id :: " + serialize_matrix(psi);
           }));
    rng = check_rng(seed, n, 6);
    record(n, "wedge_identity", sweep(samples, rng, [dim](std::mt19937_64& g) -> std::string {
             const auto p = alg::RationalSkewMatrix::random(dim, g);
             const auto q = alg::RationalSkewMatrix::random(dim, g);
             return alg::check_wedge_identity(p, q)
                        ? ""
                        : "wedge identity fails :: P " + serialize_matrix(p) + " Q " + serialize_matrix(q);
           }));
  }

  json doc{{"seed", seed},
           {"samples", samples},
           {"results", results},
           {"case1_worst_ratio", worst_ratio.get_str()},
           {"case1_worst_ratio_value", worst_ratio.get_d()},
           {"ok", all_ok}};
  return CommandOutput{all_ok ? kExitOk : kExitCheckFailed, doc.dump(2) + "\n", {}};
}

CommandOutput cmd_verify_geometry(const std::string& manifold_id, int points, int frames,
                                  std::uint64_t seed, double fd_step) {
  if (points < 1) return usage_error("points must be >= 1");
  if (frames < 0) return usage_error("frames must be >= 0");
  std::optional<CatalogEntry> entry;
  try {
    entry = catalog_entry(manifold_id);
  } catch (const Error& e) {
    return usage_error(e.what());
  }
  const ManifoldPatch& patch = entry->patch;
  const bool round_sphere = entry->attributes().has(Attribute::UnitRoundSphere);
  std::mt19937_64 rng(seed);
  const std::vector<Vector> sample = random_points(patch, points, rng);

  ReportOptions options;
  options.numeric.fd_step = fd_step;
  options.throw_on_violation = false;

  double structure = 0.0, curvature = 0.0, chern = 0.0, phi = 0.0, route = 0.0, invariance = 0.0;
  bool pfaffian_stable = true;
  try {
    for (const Vector& u : sample) {
      const TheoremReport base = theorem_report(patch, u, options);
      structure = std::max(structure, base.structure_residual);
      phi = std::max(phi, base.phi_formula_mismatch);
      route = std::max(route, base.n_route_mismatch);
      if (round_sphere) {
        curvature = std::max(curvature, curvature_forms(patch, u, options.numeric).unit_sphere_residual());
        chern = std::max(chern, chern_identity_residual(patch, u, options.numeric));
      }
      for (int f = 0; f < frames; ++f) {
        const InvarianceDeviation d =
            frame_invariance_deviation(patch, u, random_unitary(patch.n(), rng), base, options);
        invariance = std::max(invariance, d.max());
        pfaffian_stable = pfaffian_stable && !d.pfaffian_sign_changed;
      }
    }
  } catch (const Error& e) {
    return CommandOutput{exit_code_for(e), {}, e.what()};
  }

  auto check = [](double value, double tol) {
    return json{{"max", value}, {"tol", tol}, {"ok", value < tol}};
  };
  json residuals{{"structure_equation", check(structure, kStructureTol)},
                 {"phi_formula", check(phi, kPhiTol)},
                 {"n_route", check(route, kRouteTol)},
                 {"frame_invariance", check(invariance, kInvarianceTol)}};
  residuals["frame_invariance"]["pfaffian_sign_stable"] = pfaffian_stable;
  json skipped = json::array();
  if (round_sphere) {
    residuals["curvature_identity"] = check(curvature, kCurvatureTol);
    residuals["chern_identity"] = check(chern, kChernTol);
  } else {
    skipped.push_back("curvature_identity");
    skipped.push_back("chern_identity");
  }
  bool ok = pfaffian_stable;
  for (const auto& [name, value] : residuals.items()) ok = ok && value["ok"].get<bool>();

  json doc{{"manifold", entry->id}, {"points", points},     {"frames", frames},
           {"seed", seed},          {"residuals", residuals}, {"skipped", skipped},
           {"ok", ok}};
  return CommandOutput{ok ? kExitOk : kExitCheckFailed, doc.dump(2) + "\n", {}};
}

namespace {

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int emit(const CommandOutput& out, const std::string& path) {
  if (!out.diagnostics.empty()) std::cerr << out.diagnostics << "\n";
  if (out.document.empty()) return out.exit_code;
  if (path.empty()) {
    std::cout << out.document;
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open output file " << path << "\n";
      return kExitUsage;
    }
    file << out.document;
  }
  return out.exit_code;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Almost Hermitian verification toolkit: Nijenhuis norms, twistor forms, "
               "non-degeneracy bounds"};
  app.require_subcommand(1);

  std::string config_path, manifold, point_text, out_path, format_text = "csv", n_list_text = "2,3";
  int grid = 3, points = 10, frames = 5;
  long samples = 10000;
  double fd_step = 1e-5, tol = 1e-6;
  std::uint64_t seed = 0;

  std::vector<CLI::App*> commands = {
      app.add_subcommand("report", "Theorem report at one point"),
      app.add_subcommand("scan", "Theorem report over a grid"),
      app.add_subcommand("verify-algebra", "Exact rational identity sweeps"),
      app.add_subcommand("verify-geometry", "Numerical structure-equation and invariance checks"),
  };
  std::map<std::string, CLI::Option*> opts;
  for (CLI::App* cmd : commands) {
    cmd->add_option("--config", config_path, "JSON file mirroring the flags (flags win)");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--out", out_path, "Output path (stdout when omitted)");
  }
  for (CLI::App* cmd : {commands[0], commands[1], commands[3]}) {
    cmd->add_option("--manifold", manifold, "flat:<n> | conformal4 | nk-s6 | torus:eps=<r>,freq=<k>");
    cmd->add_option("--fd-step", fd_step, "Finite-difference step");
  }
  commands[0]->add_option("--point", point_text, "Comma-separated coordinates");
  commands[0]->add_option("--tol", tol, "Chain tolerance");
  commands[1]->add_option("--grid", grid, "Points per axis");
  commands[1]->add_option("--tol", tol, "Chain tolerance");
  commands[1]->add_option("--format", format_text, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  commands[2]->add_option("--n-list", n_list_text, "Comma-separated half-dimensions");
  commands[2]->add_option("--samples", samples, "Random samples per check");
  commands[3]->add_option("--points", points, "Random points");
  commands[3]->add_option("--frames", frames, "Random U(n) frames per point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot read config " + config_path);
      const json cfg = json::parse(in);
      auto apply = [&](const char* flag, const char* key, auto& target) {
        CLI::Option* opt = active->get_option_no_throw(flag);
        if (opt && opt->count() == 0 && cfg.contains(key)) target = cfg.at(key).get<std::decay_t<decltype(target)>>();
      };
      apply("--manifold", "manifold", manifold);
      apply("--point", "point", point_text);
      apply("--grid", "grid", grid);
      apply("--fd-step", "fd_step", fd_step);
      apply("--tol", "tol", tol);
      apply("--seed", "seed", seed);
      apply("--out", "out", out_path);
      apply("--format", "format", format_text);
      apply("--n-list", "n_list", n_list_text);
      apply("--samples", "samples", samples);
      apply("--points", "points", points);
      apply("--frames", "frames", frames);
    }

    const std::string name = active->get_name();
    if (name != "verify-algebra" && manifold.empty()) throw std::invalid_argument("--manifold is required");
    if (name != "verify-algebra" && !(fd_step > 1e-8 && fd_step < 1e-2))
      throw std::invalid_argument("--fd-step must lie in (1e-8, 1e-2)");

    if (name == "report") {
      std::optional<Vector> point;
      if (!point_text.empty()) {
        const std::vector<double> coords = parse_reals(point_text);
        point = Eigen::Map<const Vector>(coords.data(), static_cast<Eigen::Index>(coords.size()));
      }
      return emit(cmd_report(manifold, point, fd_step, tol), out_path);
    }
    if (name == "scan") {
      ScanConfig config{manifold, grid, fd_step, tol, seed, out_path,
                        format_text == "csv" ? OutputFormat::Csv : OutputFormat::Json};
      return emit(cmd_scan(config), out_path);
    }
    if (name == "verify-algebra") {
      std::vector<int> n_list;
      for (double v : parse_reals(n_list_text)) n_list.push_back(static_cast<int>(v));
      return emit(cmd_verify_algebra(n_list, samples, seed), out_path);
    }
    return emit(cmd_verify_geometry(manifold, points, frames, seed, fd_step), out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace ahv::cli
