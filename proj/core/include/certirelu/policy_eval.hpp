#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "certirelu/network.hpp"

namespace certirelu {

/// dx/dt = f(x) + g(x) u under the fixed policy u = phi(x), with running cost
/// q(x) + 1/2 u^T R u.
struct ControlAffineProblem {
  std::string name;
  int n = 1;
  int p = 1;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> dynamics;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> input_map;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> policy;
  std::function<double(const Eigen::VectorXd&)> state_cost;
  Eigen::MatrixXd input_cost;

  /// Throws PreconditionError unless input_cost is symmetric positive definite
  /// and every callable is set.
  void validate() const;

  Eigen::VectorXd closed_loop(const Eigen::VectorXd& x) const;
  double running_cost(const Eigen::VectorXd& x) const;
};

struct ValueModel {
  enum class Provenance { analytic, network, trajectory };

  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  Provenance provenance = Provenance::analytic;
};

ValueModel network_value_model(ShallowReluNetwork net);

struct PolicyEvalExample {
  ControlAffineProblem problem;
  ValueModel model;
};

/// Scalar example: f = 0, g = 1, phi = -tanh(5x), q = x^2/2, R = 1, with the
/// published closed form V(x) = log(cosh(5x))/5 as its model.
///
/// That closed form does not satisfy the value PDE of the stated cost; see
/// pde_residual. It is still the approximation target of the experiments.
PolicyEvalExample paper_example();

/// f = 0, g = 1, phi = -x, q = x^2/2, R = 1, exact value V = x^2/2.
PolicyEvalExample linear_benchmark();

/// Overflow-safe log(cosh(x)).
double log_cosh(double x);

/// q + 1/2 phi^T R phi + grad V^T (f + g phi); zero for the exact value function.
double pde_residual(const ControlAffineProblem& problem, const ValueModel& model,
                    const Eigen::VectorXd& x);

struct SimulationOptions {
  double step = 1e-4;
  double horizon = 40.0;
  double stop_radius = 0.0;
};

struct SimulationResult {
  double value = 0.0;
  double elapsed = 0.0;
  double final_norm = 0.0;
  long steps = 0;
  /// Horizon reached before ||x|| <= stop_radius.
  bool truncated = false;
};

/// Integrates the closed loop and the running cost with classical RK4.
/// Throws InstabilityError if the state or cost becomes non-finite.
SimulationResult simulate_value(const ControlAffineProblem& problem, const Eigen::VectorXd& x0,
                                const SimulationOptions& options = {});

/// max over grid of max(|V - f_N|, ||grad V - grad f_N||_2).
double joint_error(const ValueModel& truth, const ShallowReluNetwork& net,
                   const std::vector<Eigen::VectorXd>& grid);

}  // namespace certirelu
