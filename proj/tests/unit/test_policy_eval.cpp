#include <cmath>

#include <gtest/gtest.h>

#include "certirelu/errors.hpp"
#include "certirelu/policy_eval.hpp"
#include "certirelu/targets.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace certirelu;

namespace {

Eigen::VectorXd s(double x) { return Eigen::VectorXd::Constant(1, x); }

}  // namespace

TEST(PolicyEval, LinearBenchmarkResidualIsZero) {
  const auto ex = linear_benchmark();
  for (double x = -2; x <= 2; x += 0.125) EXPECT_LE(std::abs(pde_residual(ex.problem, ex.model, s(x))), 1e-12);
}

TEST(PolicyEval, LinearBenchmarkSimulationMatchesClosedForm) {
  const auto ex = linear_benchmark();
  for (double x0 : {-1.5, -0.3, 0.0, 0.7, 1.0}) {
    const auto r = simulate_value(ex.problem, s(x0), {1e-3, 40.0, 0.0});
    EXPECT_NEAR(r.value, 0.5 * x0 * x0, 1e-5) << x0;
  }
}

TEST(PolicyEval, TanhExampleResidualValues) {
  const auto ex = paper_example();
  // x^2/2 - tanh^2(5x)/2: the published closed form does not solve the value PDE.
  auto expected = [](double x) { return 0.5 * x * x - 0.5 * std::pow(std::tanh(5 * x), 2); };
  EXPECT_NEAR(pde_residual(ex.problem, ex.model, s(0.2)), expected(0.2), 1e-14);
  EXPECT_NEAR(pde_residual(ex.problem, ex.model, s(0.2)), -0.27001, 1e-5);
  EXPECT_NEAR(pde_residual(ex.problem, ex.model, s(1.0)), 9.08e-5, 1e-7);
  EXPECT_EQ(pde_residual(ex.problem, ex.model, s(0.0)), 0.0);
}

TEST(PolicyEval, TanhExampleSimulationDisagreesWithClosedForm) {
  const auto ex = paper_example();
  const auto r = simulate_value(ex.problem, s(1.0), {1e-3, 60.0, 1e-7});
  EXPECT_GT(std::abs(r.value - ex.model.value(s(1.0))), 0.1);
  EXPECT_TRUE(std::isfinite(r.value));
}

TEST(PolicyEval, AnalyticGradientsMatchFiniteDifferences) {
  for (const auto& ex : {paper_example(), linear_benchmark()}) {
    for (double x = -1.9; x < 2; x += 0.3) {
      const auto fd = oracle::central_gradient(ex.model.value, s(x), 1e-6);
      EXPECT_NEAR(ex.model.gradient(s(x))[0], fd[0], 1e-8) << ex.problem.name << " " << x;
    }
  }
}

TEST(PolicyEval, LogCoshIsStable) {
  EXPECT_EQ(log_cosh(0.0), 0.0);
  EXPECT_NEAR(log_cosh(0.3), std::log(std::cosh(0.3)), 1e-15);
  EXPECT_NEAR(log_cosh(-2.0), std::log(std::cosh(2.0)), 1e-14);
  EXPECT_NEAR(log_cosh(1000.0), 1000.0 - std::log(2.0), 1e-10);
}

TEST(PolicyEval, TruncationIsReported) {
  const auto ex = linear_benchmark();
  const auto r = simulate_value(ex.problem, s(1.0), {1e-2, 1.0, 1e-9});
  EXPECT_TRUE(r.truncated);
  EXPECT_NEAR(r.elapsed, 1.0, 1e-12);
  EXPECT_NEAR(r.final_norm, std::exp(-1.0), 1e-8);
  // V(1) - V(x(1)) for the exact trajectory.
  EXPECT_NEAR(r.value, 0.5 * (1 - std::exp(-2.0)), 1e-8);
  const auto stopped = simulate_value(ex.problem, s(1.0), {1e-3, 40.0, 0.5});
  EXPECT_FALSE(stopped.truncated);
  EXPECT_LE(stopped.final_norm, 0.5);
}

TEST(PolicyEval, UnstableClosedLoopThrows) {
  auto ex = linear_benchmark();
  ex.problem.policy = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(x * x.squaredNorm()); };
  EXPECT_THROW(simulate_value(ex.problem, s(2.0), {1e-2, 100.0, 0.0}), InstabilityError);
}

TEST(PolicyEval, ProblemValidation) {
  auto ex = linear_benchmark();
  ex.problem.input_cost = -Eigen::MatrixXd::Identity(1, 1);
  EXPECT_THROW(ex.problem.validate(), PreconditionError);
  ex.problem.input_cost = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_THROW(ex.problem.validate(), Error);
  ex = linear_benchmark();
  ex.problem.policy = nullptr;
  EXPECT_THROW(ex.problem.validate(), PreconditionError);
  EXPECT_THROW(simulate_value(linear_benchmark().problem, Eigen::VectorXd::Zero(2)), InvalidDimension);
  EXPECT_THROW(simulate_value(linear_benchmark().problem, s(1), {0.0, 1.0, 0.0}), PreconditionError);
}

TEST(PolicyEval, JointErrorOfExactNetworkIsZero) {
  // |x| = relu(x) + relu(-x) realized exactly by two units.
  Eigen::MatrixXd dirs(2, 1);
  dirs << 1.0, -1.0;
  const ShallowReluNetwork net(s(0.0), 0.0, dirs, Eigen::Vector2d::Zero(), Eigen::Vector2d(1.0, 1.0));
  ValueModel abs_model{[](const Eigen::VectorXd& x) { return std::abs(x[0]); },
                       [](const Eigen::VectorXd& x) { return s(x[0] >= 0 ? 1.0 : -1.0); }};
  // An even node count keeps the kink at 0 off the grid.
  EXPECT_EQ(joint_error(abs_model, net, ball_grid(1, 1.0, 100)), 0.0);
  const auto model = network_value_model(net);
  EXPECT_EQ(model.provenance, ValueModel::Provenance::network);
  EXPECT_EQ(model.value(s(-0.4)), 0.4);
  EXPECT_THROW(joint_error(abs_model, net, {}), EmptyRequest);
}

TEST(PolicyEvalProperty, JointErrorDominatesBothComponents) {
  gen::Rng rng(9);
  const auto truth = paper_example().model;
  for (int trial = 0; trial < 20; ++trial) {
    const auto net = gen::network(rng, 1, 10);
    const auto grid = ball_grid(1, 1.0, 201);
    double dv = 0, dg = 0;
    for (const auto& x : grid) {
      dv = std::max(dv, std::abs(truth.value(x) - net.eval(x)));
      dg = std::max(dg, (truth.gradient(x) - net.eval_grad(x)).norm());
    }
    ASSERT_EQ(joint_error(truth, net, grid), std::max(dv, dg));
  }
}

TEST(PolicyEvalProperty, SimulatedValueIsNonnegativeAndMonotoneInRadius) {
  const auto ex = paper_example();
  double prev = -1;
  for (double x0 = 0.0; x0 <= 1.0; x0 += 0.2) {
    const double v = simulate_value(ex.problem, s(x0), {1e-3, 60.0, 1e-7}).value;
    EXPECT_GE(v, 0.0);
    EXPECT_GT(v, prev);
    prev = v;
  }
}
