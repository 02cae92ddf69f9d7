#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "certirelu/bounds.hpp"
#include "certirelu/experiments.hpp"
#include "certirelu/fourier.hpp"
#include "certirelu/targets.hpp"

namespace certirelu {

/// Shortest decimal form that round-trips the binary64 value; "nan"/"inf" otherwise.
std::string format_double(double v);

inline constexpr const char* kSweepCsvHeader =
    "m,seed,err_f,err_g2,err_ginf,rhs_f,rhs_g2,rhs_ginf,c_max,fit_rmse,wall_ms";

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Constants of `report` plus a table of every bound over `m_list`.
/// Widths below n + 1 get null gradient entries.
std::string bound_report_json(const BoundReport& report, const std::vector<int>& m_list, double delta,
                              FunctionBoundForm form = FunctionBoundForm::grouped);

/// x, V(x), V_mod(x) on [-2.5, 2.5] at step 1/200.
std::string vmod_csv();

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

/// Self-contained SVG line chart with logarithmic axes.
std::string loglog_svg(const std::string& title, const std::string& y_label,
                       const std::vector<Series>& series);

/// Writes sweep.csv, timing.csv, bounds.json, vmod.csv, function_error.svg and
/// gradient_error.svg into out_dir (created if missing). Throws IoError.
void emit_report(const SweepResult& result, const std::filesystem::path& out_dir);

/// {rho_hat, k, argmax_omega, grids, edge_diagnostic}.
std::string rho_json(const FourierProfile& profile, const std::string& target, const RhoGrid& grid);

/// omega,abs_fhat,weighted
std::string rho_csv(const FourierProfile& profile);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace certirelu
