#include "certirelu/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "certirelu/errors.hpp"
#include "certirelu/fitting.hpp"
#include "certirelu/sampling.hpp"

namespace certirelu {

void SweepConfig::validate() const {
  if (target != "paper_vmod" && target != "gaussian" && target != "custom") {
    throw PreconditionError("sweep: unknown target '" + target + "'");
  }
  if (target == "paper_vmod" && n != 1) throw InvalidDimension("sweep: paper_vmod is one-dimensional");
  if (target == "custom" && (target_file.empty() || !rho || !k)) {
    throw PreconditionError("sweep: custom target needs target_file, rho and k");
  }
  if (n < 1) throw InvalidDimension("sweep: n must be >= 1");
  if (!(R > 0.0)) throw PreconditionError("sweep: R must be positive");
  if (m_list.empty()) throw EmptyRequest("sweep: empty m_list");
  if (seeds.empty()) throw EmptyRequest("sweep: empty seed list");
  for (int m : m_list) {
    if (m < n + 1) throw PreconditionError("sweep: every m must satisfy m >= n + 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("sweep: delta must lie in (0, 1)");
  if (fit_grid < 2 || eval_grid < 2) throw PreconditionError("sweep: grids need >= 2 points per axis");
  if (!(ridge >= 0.0) || !(grad_weight >= 0.0)) throw PreconditionError("sweep: ridge and grad_weight must be >= 0");
  if (threads < 0) throw PreconditionError("sweep: threads must be >= 0");
}

SweepConfig sweep_config_from_json(const std::string& text) {
  using nlohmann::json;
  SweepConfig c;
  try {
    const json j = json::parse(text);
    c.target = j.value("target", c.target);
    c.target_file = j.value("target_file", c.target_file);
    c.n = j.value("n", c.n);
    c.R = j.value("R", c.R);
    if (j.contains("m_list")) c.m_list = j.at("m_list").get<std::vector<int>>();
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    c.delta = j.value("delta", c.delta);
    c.fit_grid = j.value("fit_grid", c.fit_grid);
    c.eval_grid = j.value("eval_grid", c.eval_grid);
    c.ridge = j.value("ridge", c.ridge);
    c.grad_weight = j.value("grad_weight", c.grad_weight);
    c.output_dir = j.value("output_dir", c.output_dir);
    if (j.contains("rho") && !j.at("rho").is_null()) c.rho = j.at("rho").get<double>();
    if (j.contains("k") && !j.at("k").is_null()) c.k = j.at("k").get<int>();
    c.record_wall_time = j.value("record_wall_time", c.record_wall_time);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    throw IoError(std::string("sweep config: ") + e.what());
  }
  c.validate();
  return c;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sweep config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return sweep_config_from_json(ss.str());
}

std::string sweep_config_to_json(const SweepConfig& c) {
  nlohmann::json j;
  j["target"] = c.target;
  if (!c.target_file.empty()) j["target_file"] = c.target_file;
  j["n"] = c.n;
  j["R"] = c.R;
  j["m_list"] = c.m_list;
  j["seeds"] = c.seeds;
  j["delta"] = c.delta;
  j["fit_grid"] = c.fit_grid;
  j["eval_grid"] = c.eval_grid;
  j["ridge"] = c.ridge;
  j["grad_weight"] = c.grad_weight;
  j["output_dir"] = c.output_dir;
  if (c.rho) j["rho"] = *c.rho;
  if (c.k) j["k"] = *c.k;
  j["record_wall_time"] = c.record_wall_time;
  j["threads"] = c.threads;
  return j.dump(2);
}

double sup_error(const ShallowReluNetwork& net, const SampledFunction& target, ErrorMode mode) {
  if (target.points.empty()) throw EmptyRequest("sup_error: empty grid");
  double worst = 0.0;
  for (std::size_t i = 0; i < target.points.size(); ++i) {
    const auto& x = target.points[i];
    double e = 0.0;
    if (mode == ErrorMode::value) {
      e = std::abs(net.eval(x) - target.values[i]);
    } else {
      const Eigen::VectorXd d = net.eval_grad(x) - target.gradients[i];
      e = mode == ErrorMode::grad2 ? d.norm() : d.cwiseAbs().maxCoeff();
    }
    // NaN must not be swallowed by max.
    if (std::isnan(e)) return e;
    worst = std::max(worst, e);
  }
  return worst;
}

double sup_error(const ShallowReluNetwork& net, const ValueModel& target,
                 const std::vector<Eigen::VectorXd>& grid, ErrorMode mode) {
  if (grid.empty()) throw EmptyRequest("sup_error: empty grid");
  return sup_error(net, sample_model(target, grid), mode);
}

double median(std::vector<double> values) {
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw PreconditionError("log_log_slope needs >= 2 pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

namespace {

struct PreparedTarget {
  SmoothnessCertificate cert;
  SampledFunction fit;
  SampledFunction eval;
};

PreparedTarget prepare(const SweepConfig& c) {
  PreparedTarget p;
  const double p_min = SamplingDensity::uniform(c.n, c.R).p_min();
  if (c.target == "custom") {
    p.cert = SmoothnessCertificate{c.n, *c.k, *c.rho, c.R, p_min};
    p.fit = load_sampled_function(c.target_file, c.n);
    p.eval = p.fit;
  } else {
    const Target t = c.target == "paper_vmod" ? paper_vmod_target()
                                              : gaussian_target(c.n, c.R, c.k.value_or(c.n + 3));
    p.cert = t.cert;
    p.cert.R = c.R;
    p.cert.p_min = p_min;
    if (c.rho) p.cert.rho = *c.rho;
    if (c.k) p.cert.k = *c.k;
    p.fit = sample_model(t.model, ball_grid(c.n, c.R, c.fit_grid));
    p.eval = sample_model(t.model, ball_grid(c.n, c.R, c.eval_grid));
  }
  p.cert.validate();
  return p;
}

SweepRow run_row(const SweepConfig& c, const PreparedTarget& target, const BoundReport& report,
                 const SamplingDensity& density, int m, std::uint64_t seed) {
  SweepRow row;
  row.m = m;
  row.seed = seed;
  row.rhs_f = rhs_function(report, m, c.delta);
  row.rhs_g2 = rhs_grad(report, m, c.delta, GradNorm::two);
  row.rhs_ginf = rhs_grad(report, m, c.delta, GradNorm::inf);
  try {
    Rng rng = derive_stream(seed, static_cast<std::uint64_t>(m));
    FitProblem problem;
    problem.samples = sample_pairs(density, m, rng);
    problem.points = target.fit.points;
    problem.targets = target.fit.values;
    if (c.grad_weight > 0.0) problem.grad_targets = target.fit.gradients;
    problem.grad_weight = c.grad_weight;
    problem.ridge = c.ridge;
    problem.R = c.R;
    const FitResult fit = fit_least_squares(problem);
    row.err_f = sup_error(fit.network, target.eval, ErrorMode::value);
    row.err_g2 = sup_error(fit.network, target.eval, ErrorMode::grad2);
    row.err_ginf = sup_error(fit.network, target.eval, ErrorMode::gradinf);
    row.c_max = fit.network.coefficients().cwiseAbs().maxCoeff();
    row.fit_rmse = fit.train_rmse;
    if (!std::isfinite(row.err_f) || !std::isfinite(row.err_g2)) throw FitError("non-finite errors");
  } catch (const Error& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.ok = false;
    row.failure = e.what();
    row.err_f = row.err_g2 = row.err_ginf = row.c_max = row.fit_rmse = nan;
  }
  return row;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const PreparedTarget target = prepare(config);
  SweepResult result;
  result.config = config;
  result.report = derived_constants(target.cert);
  const SamplingDensity density = SamplingDensity::uniform(config.n, config.R);

  struct Task {
    int m;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int m : config.m_list) {
    for (std::uint64_t s : config.seeds) tasks.push_back({m, s});
  }
  result.rows.resize(tasks.size());
  result.measured_wall_ms.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      SweepRow row = run_row(config, target, result.report, density, tasks[i].m, tasks[i].seed);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      result.measured_wall_ms[i] = ms;
      row.wall_ms = config.record_wall_time ? ms : 0.0;
      result.rows[i] = std::move(row);
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return result;
}

}  // namespace certirelu
