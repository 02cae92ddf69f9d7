#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "certirelu/errors.hpp"
#include "certirelu/experiments.hpp"
#include "certirelu/report.hpp"
#include "certirelu/targets.hpp"

using namespace certirelu;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("certirelu_test_" + name);
  fs::remove_all(p);
  return p;
}

SweepConfig small_config() {
  SweepConfig c;
  c.m_list = {16, 64, 256};
  c.seeds = {0, 1, 2};
  c.fit_grid = 401;
  c.eval_grid = 801;
  return c;
}

}  // namespace

TEST(Experiments, ConfigJsonRoundTrip) {
  SweepConfig c = small_config();
  c.rho = 1.5;
  c.k = 5;
  const SweepConfig back = sweep_config_from_json(sweep_config_to_json(c));
  EXPECT_EQ(back.m_list, c.m_list);
  EXPECT_EQ(back.seeds, c.seeds);
  EXPECT_EQ(back.fit_grid, 401);
  EXPECT_EQ(back.rho, 1.5);
  EXPECT_EQ(back.k, 5);
  EXPECT_EQ(back.ridge, c.ridge);
}

TEST(Experiments, ConfigDefaultsAndValidation) {
  const SweepConfig d = sweep_config_from_json("{}");
  EXPECT_EQ(d.m_list.size(), 9u);
  EXPECT_EQ(d.seeds.size(), 10u);
  EXPECT_EQ(d.fit_grid, 2001);
  EXPECT_EQ(d.eval_grid, 4001);
  EXPECT_THROW(sweep_config_from_json(R"({"m_list": []})"), EmptyRequest);
  EXPECT_THROW(sweep_config_from_json(R"({"m_list": [1]})"), PreconditionError);
  EXPECT_THROW(sweep_config_from_json(R"({"delta": 1.0})"), PreconditionError);
  EXPECT_THROW(sweep_config_from_json(R"({"target": "nope"})"), PreconditionError);
  EXPECT_THROW(sweep_config_from_json(R"({"target": "custom"})"), PreconditionError);
  EXPECT_THROW(sweep_config_from_json(R"({"n": 2})"), InvalidDimension);
  EXPECT_THROW(sweep_config_from_json("{oops"), IoError);
}

TEST(Experiments, MedianAndSlope) {
  EXPECT_EQ(median({3, 1, 2}), 2);
  EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
  EXPECT_EQ(median({NAN, 5, INFINITY}), 5);
  EXPECT_TRUE(std::isnan(median({NAN})));
  EXPECT_NEAR(log_log_slope({1, 10, 100}, {1, 0.1, 0.01}), -1.0, 1e-12);
  EXPECT_NEAR(log_log_slope({4, 16, 64}, {0.5, 0.25, 0.125}), -0.5, 1e-12);
  EXPECT_THROW(log_log_slope({1}, {1}), PreconditionError);
}

TEST(Experiments, SupErrorModes) {
  Eigen::MatrixXd dirs(1, 1);
  dirs << 1.0;
  const ShallowReluNetwork net(Eigen::VectorXd::Zero(1), 0.0, dirs, Eigen::VectorXd::Zero(1),
                               Eigen::VectorXd::Ones(1));
  SampledFunction zero;
  for (double x : {-1.0, 0.5, 1.0}) {
    zero.points.push_back(Eigen::VectorXd::Constant(1, x));
    zero.values.push_back(0.0);
    zero.gradients.push_back(Eigen::VectorXd::Zero(1));
  }
  EXPECT_EQ(sup_error(net, zero, ErrorMode::value), 1.0);
  EXPECT_EQ(sup_error(net, zero, ErrorMode::grad2), 1.0);
  zero.values[1] = NAN;
  EXPECT_TRUE(std::isnan(sup_error(net, zero, ErrorMode::value)));
}

TEST(Experiments, SmallSweepDominanceAndNormOrdering) {
  const auto result = run_sweep(small_config());
  ASSERT_EQ(result.rows.size(), 9u);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    EXPECT_EQ(r.m, small_config().m_list[i / 3]);
    EXPECT_EQ(r.seed, small_config().seeds[i % 3]);
    ASSERT_TRUE(r.ok) << r.failure;
    EXPECT_LE(r.err_f, r.rhs_f);
    EXPECT_LE(r.err_g2, r.rhs_g2);
    EXPECT_LE(r.err_ginf, r.err_g2 * (1 + 1e-15));
    EXPECT_LE(r.err_g2, std::sqrt(1.0) * r.err_ginf * (1 + 1e-15));
    EXPECT_EQ(r.wall_ms, 0.0);
    EXPECT_GT(result.measured_wall_ms[i], 0.0);
  }
}

TEST(Experiments, GaussianSmokeInTwoDimensions) {
  SweepConfig c;
  c.target = "gaussian";
  c.n = 2;
  c.m_list = {64};
  c.seeds = {0};
  c.fit_grid = 41;
  c.eval_grid = 61;
  const auto result = run_sweep(c);
  ASSERT_EQ(result.rows.size(), 1u);
  const auto& r = result.rows[0];
  ASSERT_TRUE(r.ok) << r.failure;
  for (double v : {r.err_f, r.err_g2, r.err_ginf, r.rhs_f, r.rhs_g2, r.rhs_ginf, r.c_max, r.fit_rmse}) {
    EXPECT_TRUE(std::isfinite(v));
  }
  EXPECT_LE(r.err_ginf, r.err_g2 * (1 + 1e-15));
  EXPECT_LE(r.err_g2, std::sqrt(2.0) * r.err_ginf * (1 + 1e-12));
}

TEST(Experiments, CustomTargetFromFile) {
  const fs::path dir = scratch("custom");
  fs::create_directories(dir);
  std::string csv = "x,f,g\n";
  for (int i = 0; i <= 200; ++i) {
    const double x = -1 + i * 0.01;
    csv += format_double(x) + "," + format_double(std::sin(x)) + "," + format_double(std::cos(x)) + "\n";
  }
  write_text_file(dir / "sin.csv", csv);
  const auto sampled = load_sampled_function(dir / "sin.csv", 1);
  ASSERT_EQ(sampled.points.size(), 201u);
  EXPECT_EQ(sampled.gradients[200][0], std::cos(1.0));

  SweepConfig c;
  c.target = "custom";
  c.target_file = (dir / "sin.csv").string();
  c.rho = 1.0;
  c.k = 4;
  c.m_list = {32};
  c.seeds = {3};
  const auto result = run_sweep(c);
  ASSERT_TRUE(result.rows[0].ok) << result.rows[0].failure;
  EXPECT_LT(result.rows[0].err_f, 1e-2);
  EXPECT_THROW(load_sampled_function(dir / "missing.csv", 1), IoError);
}

TEST(Experiments, FailedRowsAreMarkedAndSweepContinues) {
  SweepConfig c = small_config();
  c.m_list = {16};
  c.seeds = {0};
  c.eval_grid = 2;
  // A custom file whose points leave the ball makes every fit fail.
  const fs::path dir = scratch("bad");
  fs::create_directories(dir);
  write_text_file(dir / "bad.csv", "0.5,1,0\n1.5,2,0\n");
  c.target = "custom";
  c.target_file = (dir / "bad.csv").string();
  c.rho = 1.0;
  c.k = 4;
  const auto result = run_sweep(c);
  ASSERT_EQ(result.rows.size(), 1u);
  EXPECT_FALSE(result.rows[0].ok);
  EXPECT_TRUE(std::isnan(result.rows[0].err_f));
  EXPECT_FALSE(result.rows[0].failure.empty());
  EXPECT_TRUE(std::isfinite(result.rows[0].rhs_f));
}

TEST(Experiments, ThreadCountDoesNotChangeRows) {
  SweepConfig a = small_config();
  a.threads = 1;
  SweepConfig b = small_config();
  b.threads = 3;
  EXPECT_EQ(sweep_csv(run_sweep(a).rows), sweep_csv(run_sweep(b).rows));
}

TEST(Report, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.5), "-2.5");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  EXPECT_EQ(format_double(NAN), "nan");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  EXPECT_EQ(std::stod(format_double(1.0 / 3)), 1.0 / 3);
}

TEST(Report, EmitWritesAllArtifacts) {
  SweepConfig c = small_config();
  c.m_list = {16, 32, 64, 128};
  c.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  c.fit_grid = 201;
  c.eval_grid = 401;
  const auto result = run_sweep(c);
  ASSERT_EQ(result.rows.size(), 40u);
  const fs::path out = scratch("emit");
  emit_report(result, out);

  const std::string csv = slurp(out / "sweep.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSweepCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 41);
  EXPECT_EQ(csv.find('\r'), std::string::npos);

  for (const char* svg : {"function_error.svg", "gradient_error.svg"}) {
    const std::string text = slurp(out / svg);
    ASSERT_FALSE(text.empty()) << svg;
    EXPECT_NE(text.find("<svg"), std::string::npos);
    EXPECT_NE(text.find("</svg>"), std::string::npos);
    EXPECT_NE(text.find("<polyline"), std::string::npos);
  }

  const auto bounds = nlohmann::json::parse(slurp(out / "bounds.json"));
  EXPECT_EQ(bounds.at("table").size(), 4u);
  EXPECT_DOUBLE_EQ(bounds.at("constants").at("beta").get<double>(), result.report.beta);

  const std::string vmod = slurp(out / "vmod.csv");
  EXPECT_EQ(vmod.substr(0, vmod.find('\n')), "x,V_phi,V_mod");
  EXPECT_NE(vmod.find("\n0,0,0\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(out / "timing.csv"));
  EXPECT_THROW(emit_report(SweepResult{}, out), EmptyRequest);
}

TEST(Report, BoundsJsonNullsGradientBelowThreshold) {
  const auto r = derived_constants({2, 5, 1.0, 1.0, 0.1});
  const auto j = nlohmann::json::parse(bound_report_json(r, {1, 3}, 0.1));
  EXPECT_TRUE(j.at("table")[0].at("rhs_grad_2").is_null());
  EXPECT_TRUE(j.at("table")[1].at("rhs_grad_2").is_number());
}

TEST(Report, RhoOutputs) {
  const auto prof = estimate_rho(target_spectrum("paper_vmod", RhoGrid{}), 4);
  const auto j = nlohmann::json::parse(rho_json(prof, "paper_vmod", RhoGrid{}));
  for (const char* key : {"rho_hat", "k", "grids", "edge_diagnostic"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("k").get<int>(), 4);
  const std::string csv = rho_csv(prof);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "omega,abs_fhat,weighted");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), prof.omega_grid.size() + 1);
}

TEST(Targets, BallGridAndVmod) {
  const auto line = ball_grid(1, 1.0, 5);
  ASSERT_EQ(line.size(), 5u);
  EXPECT_EQ(line[0][0], -1.0);
  EXPECT_EQ(line[2][0], 0.0);
  const auto disc = ball_grid(2, 1.0, 3);
  EXPECT_EQ(disc.size(), 5u);  // the four corners fall outside
  for (const auto& x : ball_grid(3, 2.0, 9)) EXPECT_LE(x.norm(), 2.0 + 1e-12);

  const auto t = paper_vmod_target();
  EXPECT_EQ(t.cert.rho, 2.0);
  EXPECT_EQ(t.cert.k, 4);
  const Eigen::VectorXd half = Eigen::VectorXd::Constant(1, 0.5);
  EXPECT_NEAR(t.model.value(half), log_cosh(2.5) / 5, 1e-3);
  EXPECT_NEAR(t.model.gradient(half)[0], std::tanh(2.5), 1e-3);
  EXPECT_NEAR(t.model.value(Eigen::VectorXd::Constant(1, 2.5)), 0.0, 1e-3);
}

TEST(Targets, GaussianCertificate) {
  const auto g = gaussian_target(2, 1.0, 5);
  EXPECT_EQ(g.cert.n, 2);
  EXPECT_GE(g.cert.rho, 1.0);
  const Eigen::Vector2d x(0.3, -0.4);
  EXPECT_NEAR(g.model.value(x), std::exp(-M_PI * 0.25), 1e-15);
  EXPECT_THROW(target_spectrum("unknown", RhoGrid{}), PreconditionError);
}
