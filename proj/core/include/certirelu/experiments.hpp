#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "certirelu/bounds.hpp"
#include "certirelu/network.hpp"
#include "certirelu/targets.hpp"

namespace certirelu {

/// One sweep of fitted networks against a target, over widths and seeds.
struct SweepConfig {
  std::string target = "paper_vmod";  ///< paper_vmod | gaussian | custom
  std::string target_file;            ///< sample file for target = custom
  int n = 1;
  double R = 1.0;
  std::vector<int> m_list{16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  double delta = 0.1;
  int fit_grid = 2001;   ///< points per axis
  int eval_grid = 4001;  ///< points per axis
  double ridge = 1e-10;
  double grad_weight = 0.0;
  std::string output_dir = "sweep_out";
  std::optional<double> rho;  ///< overrides the target's certificate
  std::optional<int> k;
  /// Wall times are nondeterministic; sweep.csv carries them only when set.
  bool record_wall_time = false;
  int threads = 0;  ///< 0 = hardware concurrency

  void validate() const;
};

SweepConfig sweep_config_from_json(const std::string& text);
SweepConfig load_sweep_config(const std::filesystem::path& path);
std::string sweep_config_to_json(const SweepConfig& config);

struct SweepRow {
  int m = 0;
  std::uint64_t seed = 0;
  double err_f = 0.0;
  double err_g2 = 0.0;
  double err_ginf = 0.0;
  double rhs_f = 0.0;
  double rhs_g2 = 0.0;
  double rhs_ginf = 0.0;
  double c_max = 0.0;
  double fit_rmse = 0.0;
  double wall_ms = 0.0;
  bool ok = true;
  std::string failure;
};

struct SweepResult {
  SweepConfig config;
  BoundReport report;
  std::vector<SweepRow> rows;
  std::vector<double> measured_wall_ms;  ///< always recorded, parallel to rows
};

enum class ErrorMode { value, grad2, gradinf };

/// Grid maximum of |f_N - f|, ||grad f_N - grad f||_2 or ||.||_inf.
double sup_error(const ShallowReluNetwork& net, const SampledFunction& target, ErrorMode mode);
double sup_error(const ShallowReluNetwork& net, const ValueModel& target,
                 const std::vector<Eigen::VectorXd>& grid, ErrorMode mode);

/// Rows come out ordered by (m, seed) as listed in the config; a failed fit
/// marks its row and the sweep continues.
SweepResult run_sweep(const SweepConfig& config);

/// Median of the finite entries; NaN when there are none.
double median(std::vector<double> values);

/// Ordinary least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace certirelu
