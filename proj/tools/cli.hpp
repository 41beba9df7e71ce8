#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "ahv/catalog.hpp"
#include "ahv/twistorform.hpp"

namespace ahv::cli {

// Exit-code contract: 0 all checks pass, 1 a mathematical check failed,
// 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { Json, Csv };

struct ScanConfig {
  std::string manifold_id;
  int grid = 3;
  double fd_step = 1e-5;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::string output_path;
  OutputFormat format = OutputFormat::Csv;

  // Throws InvalidArgument on a bad grid or step for a patch of dimension `dim`.
  void validate(int dim) const;
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string document;     // file / stdout payload
  std::string diagnostics;  // stderr
};

// Doubles rendered with 17 significant digits.
std::string format_double(double value);

nlohmann::json report_to_json(const TheoremReport& report);

// Cell-centred grid, `grid` points per axis, in deterministic lexicographic order.
std::vector<Vector> grid_points(const ManifoldPatch& patch, int grid);

// Uniform samples from the patch box shrunk by 5% of its width on every side.
std::vector<Vector> random_points(const ManifoldPatch& patch, int count, std::mt19937_64& rng);

Matrix random_unitary(int n, std::mt19937_64& rng);

struct InvarianceDeviation {
  double norm_n2 = 0.0;
  double margin = 0.0;
  double determinant = 0.0;
  bool pfaffian_sign_changed = false;

  double max() const { return std::max({norm_n2, margin, determinant}); }
};

// Reruns the pipeline from the frame E U and compares the scalar outputs with
// `base` using |a - b| / max(1, |b|).
InvarianceDeviation frame_invariance_deviation(const ManifoldPatch& patch, const Vector& u,
                                               const Matrix& unitary, const TheoremReport& base,
                                               const ReportOptions& options = {});

CommandOutput cmd_report(const std::string& manifold_id, const std::optional<Vector>& point,
                         double fd_step = 1e-5, double tol = 1e-6);

CommandOutput cmd_scan(const ScanConfig& config);

CommandOutput cmd_verify_algebra(const std::vector<int>& n_list, long samples, std::uint64_t seed);

CommandOutput cmd_verify_geometry(const std::string& manifold_id, int points, int frames,
                                  std::uint64_t seed, double fd_step = 1e-5);

// Full command-line entry point (also used by tests).
int run(int argc, char** argv);

}  // namespace ahv::cli
