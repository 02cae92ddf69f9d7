#include "certirelu/fitting.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "certirelu/errors.hpp"

namespace certirelu {

namespace {

constexpr double kBallSlack = 1e-12;

void validate(const FitProblem& p) {
  if (p.points.empty()) throw EmptyRequest("fit requires at least one point");
  if (p.targets.size() != p.points.size()) {
    throw InvalidDimension("fit: number of targets does not match number of points");
  }
  if (p.grad_targets && p.grad_targets->size() != p.points.size()) {
    throw InvalidDimension("fit: number of gradient targets does not match number of points");
  }
  if (!(p.ridge >= 0.0) || !std::isfinite(p.ridge)) throw PreconditionError("ridge must be >= 0");
  if (!(p.grad_weight >= 0.0) || !std::isfinite(p.grad_weight)) {
    throw PreconditionError("grad_weight must be >= 0");
  }
  if (p.grad_weight > 0.0 && !p.grad_targets) {
    throw PreconditionError("grad_weight > 0 requires gradient targets");
  }
  const Eigen::Index n = p.points.front().size();
  if (n < 1) throw InvalidDimension("fit points must have dimension >= 1");
  for (const auto& s : p.samples) {
    if (s.alpha.size() != n) throw InvalidDimension("fit: sample dimension does not match points");
  }
  for (std::size_t j = 0; j < p.points.size(); ++j) {
    if (p.points[j].size() != n) throw InvalidDimension("fit: points have mixed dimensions");
    if (p.points[j].norm() > p.R * (1.0 + kBallSlack)) {
      throw PreconditionError("fit: point " + std::to_string(j) + " lies outside the ball");
    }
    if (!std::isfinite(p.targets[j])) throw FitError("fit: non-finite target value");
    if (p.grad_targets) {
      const auto& g = (*p.grad_targets)[j];
      if (g.size() != n) throw InvalidDimension("fit: gradient target dimension mismatch");
      if (!g.allFinite()) throw FitError("fit: non-finite gradient target");
    }
  }
}

// Minimizes ||A x - y||^2 + ridge ||x||^2 through orthogonal factorizations only.
Eigen::VectorXd solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double ridge,
                      const FitOptions& options, long& rank, std::string& solver) {
  const Eigen::Index rows = A.rows();
  const Eigen::Index cols = A.cols();
  if (ridge == 0.0) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    if (options.rank_tolerance) cod.setThreshold(*options.rank_tolerance);
    cod.compute(A);
    rank = static_cast<long>(cod.rank());
    solver = "complete_orthogonal";
    return cod.solve(y);
  }
  const double s = std::sqrt(ridge);
  rank = static_cast<long>(cols);
  if (rows >= cols) {
    // [A; sqrt(ridge) I] x ~ [y; 0]
    Eigen::MatrixXd B(rows + cols, cols);
    B.topRows(rows) = A;
    B.bottomRows(cols) = s * Eigen::MatrixXd::Identity(cols, cols);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows + cols);
    rhs.head(rows) = y;
    solver = "householder_qr_augmented";
    return B.householderQr().solve(rhs);
  }
  // Wide design: x = A^T z with (A A^T + ridge I) z = y. Factor
  // [A^T; sqrt(ridge) I] = Q R so that A A^T + ridge I = R^T R.
  Eigen::MatrixXd B(cols + rows, rows);
  B.topRows(cols) = A.transpose();
  B.bottomRows(rows) = s * Eigen::MatrixXd::Identity(rows, rows);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
  const auto R = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
  Eigen::VectorXd z = R.transpose().solve(y);
  z = R.solve(z);
  solver = "householder_qr_dual";
  return A.transpose() * z;
}

}  // namespace

Eigen::MatrixXd design_matrix(const SampleSet& samples, const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) return Eigen::MatrixXd(0, 0);
  const Eigen::Index n = points.front().size();
  const Eigen::Index m = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd D(static_cast<Eigen::Index>(points.size()), m + n + 1);
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != n) throw InvalidDimension("design_matrix: points have mixed dimensions");
    D.row(static_cast<Eigen::Index>(j)) = feature_vector(samples, points[j]).transpose();
  }
  return D;
}

FitResult fit_least_squares(const FitProblem& problem, const FitOptions& options) {
  validate(problem);
  const Eigen::Index n = problem.points.front().size();
  const Eigen::Index npts = static_cast<Eigen::Index>(problem.points.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(problem.samples.size()) + n + 1;
  const bool with_grad = problem.grad_weight > 0.0;
  const Eigen::Index rows = npts + (with_grad ? npts * n : 0);

  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd y(rows);
  A.topRows(npts) = design_matrix(problem.samples, problem.points);
  for (Eigen::Index j = 0; j < npts; ++j) y[j] = problem.targets[static_cast<std::size_t>(j)];
  if (with_grad) {
    const double w = std::sqrt(problem.grad_weight);
    for (Eigen::Index j = 0; j < npts; ++j) {
      const auto& x = problem.points[static_cast<std::size_t>(j)];
      const Eigen::MatrixXd jac = feature_jacobian(problem.samples, x);
      const auto& g = (*problem.grad_targets)[static_cast<std::size_t>(j)];
      for (Eigen::Index k = 0; k < n; ++k) {
        A.row(npts + j * n + k) = w * jac.col(k).transpose();
        y[npts + j * n + k] = w * g[k];
      }
    }
  }

  long rank = 0;
  std::string solver;
  const Eigen::VectorXd theta = solve(A, y, problem.ridge, options, rank, solver);
  if (!theta.allFinite()) throw FitError("fit: solver produced non-finite coefficients");

  const Eigen::VectorXd residual = A * theta - y;
  FitResult out{ShallowReluNetwork(theta.segment(1, n), theta[0], problem.samples,
                                   theta.tail(cols - n - 1)),
                0.0, 0.0, rank, problem.ridge, solver};
  out.objective = residual.squaredNorm() + problem.ridge * theta.squaredNorm();
  out.train_rmse = std::sqrt(residual.head(npts).squaredNorm() / static_cast<double>(npts));
  return out;
}

CapsReport coefficient_caps_check(const ShallowReluNetwork& net, const BoundReport& caps) {
  CapsReport r;
  r.a_norm = net.a().norm();
  r.b_abs = std::abs(net.b());
  r.c_max = net.width() > 0 ? net.coefficients().cwiseAbs().maxCoeff() : 0.0;
  r.a_ok = r.a_norm <= caps.a_cap;
  r.b_ok = r.b_abs <= caps.b_cap;
  r.c_ok = net.width() == 0 || r.c_max <= caps.c_cap(net.width());
  return r;
}

}  // namespace certirelu
