#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "certirelu/bounds.hpp"
#include "certirelu/network.hpp"
#include "certirelu/sampling.hpp"

namespace certirelu {

/// Least-squares problem for the output coefficients (b, a, c) of a network
/// whose input parameters are fixed.
struct FitProblem {
  SampleSet samples;
  std::vector<Eigen::VectorXd> points;
  std::vector<double> targets;
  std::optional<std::vector<Eigen::VectorXd>> grad_targets;
  double grad_weight = 0.0;
  double ridge = 0.0;
  /// Radius of the ball every point must lie in.
  double R = 1.0;
};

struct FitOptions {
  /// Relative pivot threshold of the rank-revealing factorization used when
  /// ridge = 0. Unset selects Eigen's default.
  std::optional<double> rank_tolerance;
};

struct FitResult {
  ShallowReluNetwork network;
  /// sum (f_N - y)^2 + w sum ||grad f_N - g||^2 + ridge ||theta||^2
  double objective = 0.0;
  /// RMS of the value residuals over the fit points.
  double train_rmse = 0.0;
  /// Numerical rank of the design; full column count when ridge > 0.
  long rank = 0;
  double ridge = 0.0;
  std::string solver;
};

/// Rows are feature_vector(samples, points[j]).
Eigen::MatrixXd design_matrix(const SampleSet& samples, const std::vector<Eigen::VectorXd>& points);

FitResult fit_least_squares(const FitProblem& problem, const FitOptions& options = {});

struct CapsReport {
  bool a_ok = true;
  bool b_ok = true;
  bool c_ok = true;
  double a_norm = 0.0;
  double b_abs = 0.0;
  double c_max = 0.0;
};

/// Compares fitted coefficients against the existence-theorem coefficient
/// bounds. Diagnostic only; least squares is not constrained by them.
CapsReport coefficient_caps_check(const ShallowReluNetwork& net, const BoundReport& caps);

}  // namespace certirelu
