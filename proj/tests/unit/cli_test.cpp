#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace ahv;
using namespace ahv::cli;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "ahv");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ahv_cli_test_" + name);
}

// Parses the data rows of a CSV scan, skipping header and '#' lines.
std::vector<std::vector<double>> csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST(Report, FlatOrigin) {
  const CommandOutput out = cmd_report("flat:3", Vector(Vector::Zero(6)));
  ASSERT_EQ(out.exit_code, kExitOk) << out.diagnostics;
  const json doc = json::parse(out.document);
  EXPECT_EQ(doc["normN2"].get<double>(), 0.0);
  EXPECT_DOUBLE_EQ(doc["margin"].get<double>(), 1.0);
  for (const char* k : {"a", "b", "c", "d"}) EXPECT_TRUE(doc["chain_ok"][k].get<bool>());
  for (const char* key : {"point", "normN2", "margin", "sumA2", "bound_quarterA", "bound_paper",
                          "chain_ok", "nondegenerate", "pfaffian_sign", "structure_residual",
                          "phi_formula_mismatch", "n_route_mismatch"})
    EXPECT_TRUE(doc.contains(key)) << key;
}

TEST(Report, SphereOrigin) {
  const CommandOutput out = cmd_report("nk-s6", std::nullopt);
  const json doc = json::parse(out.document);
  EXPECT_GE(doc["normN2"].get<double>(), 64.0 / 5.0);
  for (const char* k : {"a", "b", "c"}) EXPECT_TRUE(doc["chain_ok"][k].get<bool>());
}

TEST(Report, OutOfDomainIsUsageError) {
  Vector u = Vector::Zero(6);
  u[0] = 3.0;
  const CommandOutput out = cmd_report("flat:3", u);
  EXPECT_EQ(out.exit_code, kExitUsage);
  EXPECT_FALSE(out.diagnostics.empty());
  EXPECT_TRUE(out.document.empty());
  EXPECT_EQ(cmd_report("flat:3", Vector(Vector::Zero(4))).exit_code, kExitUsage);
  EXPECT_EQ(cmd_report("klein", std::nullopt).exit_code, kExitUsage);
}

TEST(Scan, FlatGrid) {
  ScanConfig config;
  config.manifold_id = "flat:2";
  config.grid = 3;
  config.format = OutputFormat::Csv;
  const CommandOutput out = cmd_scan(config);
  ASSERT_EQ(out.exit_code, kExitOk);
  const auto rows = csv_rows(out.document);
  ASSERT_EQ(rows.size(), 81u);
  for (const auto& row : rows) {
    EXPECT_EQ(row[4], 0.0);
    EXPECT_DOUBLE_EQ(row[5], 1.0);
    EXPECT_EQ(row[7], 1.0);
  }
  EXPECT_EQ(out.document.rfind("u1,u2,u3,u4,normN2,margin,bound_paper,chain_ok,nondegenerate\n", 0), 0u);
  EXPECT_NE(out.document.find("# chain_violations=0"), std::string::npos);
}

TEST(Scan, TorusMarginsPositive) {
  ScanConfig config;
  config.manifold_id = "torus:eps=0.05,freq=1";
  config.grid = 2;
  config.format = OutputFormat::Json;
  const CommandOutput out = cmd_scan(config);
  ASSERT_EQ(out.exit_code, kExitOk);
  const json doc = json::parse(out.document);
  EXPECT_EQ(doc["summary"]["chain_violations"].get<long>(), 0);
  EXPECT_GT(doc["summary"]["min_margin"].get<double>(), 0.0);
  EXPECT_EQ(doc["rows"].size(), 64u);
}

TEST(Scan, SphereNormConstant) {
  ScanConfig config;
  config.manifold_id = "nk-s6";
  config.grid = 2;
  config.format = OutputFormat::Json;
  const json s = json::parse(cmd_scan(config).document)["summary"];
  const double hi = s["max_normN2"].get<double>(), lo = s["min_normN2"].get<double>();
  EXPECT_LT(hi - lo, 1e-4 * hi);
}

TEST(Scan, ConfigGuards) {
  ScanConfig config;
  config.manifold_id = "flat:2";
  config.grid = 0;
  EXPECT_EQ(cmd_scan(config).exit_code, kExitUsage);
  config.grid = 100;  // 10^8 points in dimension 4
  EXPECT_EQ(cmd_scan(config).exit_code, kExitUsage);
  config.grid = 2;
  config.fd_step = 0.1;
  EXPECT_EQ(cmd_scan(config).exit_code, kExitUsage);
}

TEST(Scan, GridOrderIsLexicographic) {
  const auto entry = catalog_entry("flat:2");
  const auto pts = grid_points(entry.patch, 2);
  ASSERT_EQ(pts.size(), 16u);
  EXPECT_DOUBLE_EQ(pts[0][3], -0.5);
  EXPECT_DOUBLE_EQ(pts[1][3], 0.5);
  EXPECT_DOUBLE_EQ(pts[1][0], -0.5);
  EXPECT_DOUBLE_EQ(pts[8][0], 0.5);
}

TEST(Scan, OutputFilesAreByteIdentical) {
  const auto a = temp_file("scan_a.csv"), b = temp_file("scan_b.csv");
  for (const auto& path : {a, b})
    ASSERT_EQ(run_args({"scan", "--manifold", "torus:eps=0.1,freq=2", "--grid", "2", "--format", "csv",
                        "--out", path.string()}),
              kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST(VerifyAlgebra, SweepsPass) {
  const CommandOutput out = cmd_verify_algebra({2, 3}, 300, 42);
  ASSERT_EQ(out.exit_code, kExitOk) << out.document;
  const json doc = json::parse(out.document);
  std::set<std::string> checks;
  for (const auto& r : doc["results"]) {
    checks.insert(r["check"].get<std::string>());
    EXPECT_EQ(r["failed"].get<long>(), 0);
    EXPECT_EQ(r["passed"].get<long>(), 300);
  }
  EXPECT_EQ(checks, (std::set<std::string>{"identity_c1", "case1_inequality", "case2_identities",
                                           "skew_decompose", "canonical_j1", "wedge_identity"}));
  EXPECT_LE(doc["case1_worst_ratio_value"].get<double>(), 4.0);
}

TEST(VerifyAlgebra, Deterministic) {
  EXPECT_EQ(cmd_verify_algebra({3}, 50, 7).document, cmd_verify_algebra({3}, 50, 7).document);
}

TEST(VerifyAlgebra, InputValidation) {
  EXPECT_EQ(cmd_verify_algebra({3}, 0, 0).exit_code, kExitUsage);
  EXPECT_EQ(cmd_verify_algebra({1}, 10, 0).exit_code, kExitUsage);
  EXPECT_EQ(cmd_verify_algebra({7}, 10, 0).exit_code, kExitUsage);
  EXPECT_EQ(cmd_verify_algebra({}, 10, 0).exit_code, kExitUsage);
}

TEST(VerifyGeometry, SpherePasses) {
  const CommandOutput out = cmd_verify_geometry("nk-s6", 4, 3, 1);
  ASSERT_EQ(out.exit_code, kExitOk) << out.document;
  const json doc = json::parse(out.document);
  EXPECT_TRUE(doc["residuals"].contains("chern_identity"));
  EXPECT_TRUE(doc["skipped"].empty());
}

TEST(VerifyGeometry, ConformalSkipsSphereChecks) {
  const CommandOutput out = cmd_verify_geometry("conformal4", 10, 1, 1);
  ASSERT_EQ(out.exit_code, kExitOk);
  const json doc = json::parse(out.document);
  EXPECT_LT(doc["residuals"]["structure_equation"]["max"].get<double>(), 1e-6);
  EXPECT_FALSE(doc["residuals"].contains("chern_identity"));
  EXPECT_EQ(doc["skipped"].size(), 2u);
}

TEST(VerifyGeometry, UnknownIdIsUsageError) {
  EXPECT_EQ(cmd_verify_geometry("hyperbolic", 3, 1, 0).exit_code, kExitUsage);
  EXPECT_EQ(cmd_verify_geometry("flat:2", 0, 1, 0).exit_code, kExitUsage);
}

TEST(Invariance, RandomUnitaryFrames) {
  std::mt19937_64 rng(3);
  const auto entry = catalog_entry("nk-s6");
  const Vector u = Vector::Constant(6, 0.1);
  ReportOptions options;
  options.throw_on_violation = false;
  const TheoremReport base = theorem_report(entry.patch, u, options);
  for (int f = 0; f < 5; ++f) {
    const InvarianceDeviation d = frame_invariance_deviation(entry.patch, u, random_unitary(3, rng), base, options);
    EXPECT_LT(d.max(), 1e-8);
    EXPECT_FALSE(d.pfaffian_sign_changed);
  }
}

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run_args({}), kExitUsage);
  EXPECT_EQ(run_args({"report"}), kExitUsage);
  EXPECT_EQ(run_args({"report", "--manifold", "flat:2", "--point", "0,0,zero,0"}), kExitUsage);
  EXPECT_EQ(run_args({"verify-algebra", "--samples", "0"}), kExitUsage);
  EXPECT_EQ(run_args({"scan", "--manifold", "flat:2", "--format", "xml"}), kExitUsage);
  const auto out = temp_file("report.json");
  EXPECT_EQ(run_args({"report", "--manifold", "flat:2", "--point", "0.1,0,0,0", "--out", out.string()}), kExitOk);
  EXPECT_DOUBLE_EQ(json::parse(slurp(out))["point"][0].get<double>(), 0.1);
  std::filesystem::remove(out);
}

TEST(Run, ConfigFileLosesToFlags) {
  const auto cfg = temp_file("config.json");
  const auto out = temp_file("config_out.json");
  {
    std::ofstream f(cfg);
    f << json{{"manifold", "flat:3"}, {"point", "0,0,0,0,0,0"}, {"out", out.string()}}.dump();
  }
  ASSERT_EQ(run_args({"report", "--config", cfg.string()}), kExitOk);
  EXPECT_EQ(json::parse(slurp(out))["manifold"], "flat:3");
  ASSERT_EQ(run_args({"report", "--config", cfg.string(), "--manifold", "flat:2", "--point", "0,0,0,0"}),
            kExitOk);
  EXPECT_EQ(json::parse(slurp(out))["manifold"], "flat:2");
  std::filesystem::remove(cfg);
  std::filesystem::remove(out);
}
