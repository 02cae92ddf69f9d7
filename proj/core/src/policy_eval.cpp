#include "certirelu/policy_eval.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <utility>

#include <Eigen/Cholesky>

#include "certirelu/errors.hpp"

namespace certirelu {

void ControlAffineProblem::validate() const {
  if (n < 1 || p < 1) throw InvalidDimension("problem dimensions must be positive");
  if (!dynamics || !input_map || !policy || !state_cost) {
    throw PreconditionError("problem " + name + " is missing a callable");
  }
  if (input_cost.rows() != p || input_cost.cols() != p) {
    throw InvalidDimension("input cost must be p x p");
  }
  if (!input_cost.isApprox(input_cost.transpose(), 1e-12)) {
    throw PreconditionError("input cost must be symmetric");
  }
  if (Eigen::LLT<Eigen::MatrixXd>(input_cost).info() != Eigen::Success) {
    throw PreconditionError("input cost must be positive definite");
  }
}

Eigen::VectorXd ControlAffineProblem::closed_loop(const Eigen::VectorXd& x) const {
  return dynamics(x) + input_map(x) * policy(x);
}

double ControlAffineProblem::running_cost(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd u = policy(x);
  return state_cost(x) + 0.5 * u.dot(input_cost * u);
}

ValueModel network_value_model(ShallowReluNetwork net) {
  auto shared = std::make_shared<const ShallowReluNetwork>(std::move(net));
  return ValueModel{[shared](const Eigen::VectorXd& x) { return shared->eval(x); },
                    [shared](const Eigen::VectorXd& x) { return shared->eval_grad(x); },
                    ValueModel::Provenance::network};
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

namespace {

ControlAffineProblem scalar_problem(std::string name, std::function<double(double)> phi) {
  ControlAffineProblem pr;
  pr.name = std::move(name);
  pr.n = 1;
  pr.p = 1;
  pr.dynamics = [](const Eigen::VectorXd&) { return Eigen::VectorXd::Zero(1); };
  pr.input_map = [](const Eigen::VectorXd&) { return Eigen::MatrixXd::Ones(1, 1); };
  pr.policy = [phi = std::move(phi)](const Eigen::VectorXd& x) {
    return Eigen::VectorXd::Constant(1, phi(x[0]));
  };
  pr.state_cost = [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); };
  pr.input_cost = Eigen::MatrixXd::Identity(1, 1);
  return pr;
}

}  // namespace

PolicyEvalExample paper_example() {
  PolicyEvalExample ex;
  ex.problem = scalar_problem("paper_example", [](double x) { return -std::tanh(5.0 * x); });
  ex.model.value = [](const Eigen::VectorXd& x) { return log_cosh(5.0 * x[0]) / 5.0; };
  ex.model.gradient = [](const Eigen::VectorXd& x) {
    return Eigen::VectorXd::Constant(1, std::tanh(5.0 * x[0]));
  };
  ex.model.provenance = ValueModel::Provenance::analytic;
  return ex;
}

PolicyEvalExample linear_benchmark() {
  PolicyEvalExample ex;
  ex.problem = scalar_problem("linear", [](double x) { return -x; });
  ex.model.value = [](const Eigen::VectorXd& x) { return 0.5 * x.squaredNorm(); };
  ex.model.gradient = [](const Eigen::VectorXd& x) { return Eigen::VectorXd(x); };
  ex.model.provenance = ValueModel::Provenance::analytic;
  return ex;
}

double pde_residual(const ControlAffineProblem& problem, const ValueModel& model,
                    const Eigen::VectorXd& x) {
  if (x.size() != problem.n) throw InvalidDimension("pde_residual: state dimension mismatch");
  const Eigen::VectorXd grad = model.gradient(x);
  if (grad.size() != problem.n) throw InvalidDimension("pde_residual: gradient dimension mismatch");
  return problem.running_cost(x) + grad.dot(problem.closed_loop(x));
}

SimulationResult simulate_value(const ControlAffineProblem& problem, const Eigen::VectorXd& x0,
                                const SimulationOptions& options) {
  problem.validate();
  if (x0.size() != problem.n) throw InvalidDimension("simulate_value: initial state dimension mismatch");
  if (!(options.step > 0.0) || !(options.horizon > 0.0) || !(options.stop_radius >= 0.0)) {
    throw PreconditionError("simulate_value: step and horizon must be positive, stop_radius >= 0");
  }

  // Augmented state (x, accumulated cost); the cost does not feed back.
  const auto rhs = [&problem](const Eigen::VectorXd& x, Eigen::VectorXd& dx, double& dcost) {
    dx = problem.closed_loop(x);
    dcost = problem.running_cost(x);
  };

  SimulationResult out;
  Eigen::VectorXd x = x0;
  double cost = 0.0;
  double t = 0.0;
  Eigen::VectorXd k1, k2, k3, k4;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  while (x.norm() > options.stop_radius && t < options.horizon) {
    const double h = std::min(options.step, options.horizon - t);
    rhs(x, k1, c1);
    rhs(x + 0.5 * h * k1, k2, c2);
    rhs(x + 0.5 * h * k2, k3, c3);
    rhs(x + h * k3, k4, c4);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    cost += h / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
    t += h;
    ++out.steps;
    if (!x.allFinite() || !std::isfinite(cost)) {
      throw InstabilityError("simulate_value: trajectory diverged at t = " + std::to_string(t));
    }
  }
  out.value = cost;
  out.elapsed = t;
  out.final_norm = x.norm();
  out.truncated = out.final_norm > options.stop_radius;
  return out;
}

double joint_error(const ValueModel& truth, const ShallowReluNetwork& net,
                   const std::vector<Eigen::VectorXd>& grid) {
  if (grid.empty()) throw EmptyRequest("joint_error: empty grid");
  double worst = 0.0;
  for (const auto& x : grid) {
    const double dv = std::abs(truth.value(x) - net.eval(x));
    const double dg = (truth.gradient(x) - net.eval_grad(x)).norm();
    worst = std::max({worst, dv, dg});
  }
  return worst;
}

}  // namespace certirelu
