// certirelu: sweeps, bound tables, smoothness scans and policy-evaluation
// diagnostics for random shallow ReLU networks.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "certirelu/bounds.hpp"
#include "certirelu/errors.hpp"
#include "certirelu/experiments.hpp"
#include "certirelu/fourier.hpp"
#include "certirelu/policy_eval.hpp"
#include "certirelu/report.hpp"
#include "certirelu/targets.hpp"

namespace {

using namespace certirelu;

SmoothnessCertificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open certificate " + path);
  try {
    const auto j = nlohmann::json::parse(in);
    SmoothnessCertificate c;
    c.n = j.at("n").get<int>();
    c.k = j.at("k").get<int>();
    c.rho = j.at("rho").get<double>();
    c.R = j.at("R").get<double>();
    c.p_min = j.at("p_min").get<double>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("certificate: ") + e.what());
  }
}

int run_sweep_command(const std::string& config_path, const std::string& out_override) {
  SweepConfig config = load_sweep_config(config_path);
  if (!out_override.empty()) config.output_dir = out_override;
  const SweepResult result = run_sweep(config);
  emit_report(result, config.output_dir);
  std::size_t failed = 0;
  for (const auto& r : result.rows) failed += r.ok ? 0 : 1;
  std::cerr << "sweep: " << result.rows.size() << " rows (" << failed << " failed) written to "
            << config.output_dir << "\n";
  return 0;
}

int run_bounds_command(const std::string& cert_path, const std::vector<int>& m_list, double delta,
                       bool typeset) {
  const BoundReport report = derived_constants(load_certificate(cert_path));
  std::cout << bound_report_json(report, m_list, delta,
                                 typeset ? FunctionBoundForm::as_typeset : FunctionBoundForm::grouped);
  return 0;
}

int run_rho_command(const std::string& target, const std::string& file, int k, RhoGrid grid,
                    const std::string& out_dir) {
  const Spectrum spectrum =
      file.empty() ? target_spectrum(target, grid) : sample_file_spectrum(file, grid);
  const FourierProfile profile = estimate_rho(spectrum, k);
  const std::string name = file.empty() ? target : file;
  const std::string json = rho_json(profile, name, grid);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_text_file(std::filesystem::path(out_dir) / "rho.json", json);
    write_text_file(std::filesystem::path(out_dir) / "rho_profile.csv", rho_csv(profile));
  }
  std::cout << json;
  return 0;
}

int run_policy_eval_command(const std::string& problem_id, const std::vector<double>& x0s,
                            SimulationOptions options, const std::string& out_path) {
  PolicyEvalExample ex;
  if (problem_id == "tanh") {
    ex = paper_example();
  } else if (problem_id == "linear") {
    ex = linear_benchmark();
  } else {
    throw PreconditionError("unknown problem '" + problem_id + "' (expected tanh or linear)");
  }
  std::string csv = "x0,simulated_V,analytic_V,pde_residual\n";
  bool flagged = false;
  for (double x0 : x0s) {
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, x0);
    const SimulationResult sim = simulate_value(ex.problem, x, options);
    const double analytic = ex.model.value(x);
    const double residual = pde_residual(ex.problem, ex.model, x);
    if (sim.truncated) {
      std::cerr << "warning: x0=" << x0 << " truncated at horizon with |x|=" << sim.final_norm << "\n";
    }
    if (std::abs(residual) > 1e-8) flagged = true;
    csv += format_double(x0) + ',' + format_double(sim.value) + ',' + format_double(analytic) + ',' +
           format_double(residual) + '\n';
  }
  if (flagged) {
    std::cerr << "note: the analytic value model of '" << problem_id
              << "' does not satisfy the value PDE of its stated cost (nonzero residual)\n";
  }
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_text_file(out_path, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random shallow ReLU networks: fits, error bounds and diagnostics"};
  app.require_subcommand(1);

  std::string config_path, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Fit networks over widths and seeds; write CSV, JSON and SVG");
  sweep->add_option("--config", config_path, "Sweep configuration (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "Override the configured output directory");

  std::string cert_path;
  std::vector<int> m_list;
  double delta = 0.1;
  bool typeset = false;
  auto* bounds = app.add_subcommand("bounds", "Print derived constants and bound values as JSON");
  bounds->add_option("--cert", cert_path, "Certificate JSON {n,k,rho,R,p_min}")->required()->check(CLI::ExistingFile);
  bounds->add_option("--m", m_list, "Network widths")->required()->delimiter(',');
  bounds->add_option("--delta", delta, "Failure probability in (0,1)");
  bounds->add_flag("--as-typeset", typeset, "Covering term outside the 1/sqrt(m) factor");

  std::string rho_target = "paper_vmod", rho_file, rho_out;
  int rho_k = 4;
  RhoGrid grid;
  auto* rho = app.add_subcommand("rho", "Estimate the smoothness coefficient of a target");
  rho->add_option("--target", rho_target, "paper_vmod | gaussian");
  rho->add_option("--file", rho_file, "Equispaced x,f samples instead of a named target")->check(CLI::ExistingFile);
  rho->add_option("--k", rho_k, "Smoothness order")->required();
  rho->add_option("--x-half-width", grid.x_half_width, "Quadrature support [-w, w]");
  rho->add_option("--x-step", grid.x_step, "Quadrature step");
  rho->add_option("--omega-max", grid.omega_max, "Frequency scan half width");
  rho->add_option("--omega-step", grid.omega_step, "Frequency scan step");
  rho->add_option("--out", rho_out, "Directory for rho.json and rho_profile.csv");

  std::string problem_id = "tanh", pe_out;
  std::vector<double> x0s;
  SimulationOptions sim{1e-4, 60.0, 1e-7};
  auto* pe = app.add_subcommand("policy-eval", "Simulated vs analytic value and PDE residual");
  pe->add_option("--x0", x0s, "Initial states")->required()->delimiter(',');
  pe->add_option("--problem", problem_id, "tanh | linear");
  pe->add_option("--step", sim.step, "RK4 step");
  pe->add_option("--horizon", sim.horizon, "Integration horizon");
  pe->add_option("--stop", sim.stop_radius, "Stop once |x| falls below this");
  pe->add_option("--out", pe_out, "CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) return run_sweep_command(config_path, sweep_out);
    if (*bounds) return run_bounds_command(cert_path, m_list, delta, typeset);
    if (*rho) return run_rho_command(rho_target, rho_file, rho_k, grid, rho_out);
    if (*pe) return run_policy_eval_command(problem_id, x0s, sim, pe_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
