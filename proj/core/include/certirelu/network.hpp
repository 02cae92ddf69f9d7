#pragma once

#include <string>
#include <string_view>

#include <Eigen/Core>

#include "certirelu/sampling.hpp"

namespace certirelu {

inline double relu(double t) { return t > 0.0 ? t : 0.0; }

/// Unit step with value 1 at t = 0, so gradients are defined everywhere.
inline double relu_step(double t) { return t >= 0.0 ? 1.0 : 0.0; }

struct RidgeUnit {
  Eigen::VectorXd alpha;
  double t = 0.0;
  double c = 0.0;
};

/// f(x) = a^T x + b + sum_i c_i relu(alpha_i^T x - t_i).
///
/// Immutable once constructed. Directions are stored row-wise so evaluation is
/// a single matrix-vector product.
class ShallowReluNetwork {
 public:
  /// Affine-only network.
  ShallowReluNetwork(Eigen::VectorXd a, double b);
  /// Units from fixed samples and their output coefficients.
  ShallowReluNetwork(Eigen::VectorXd a, double b, const SampleSet& samples,
                     const Eigen::VectorXd& coefficients);
  /// Units given directly as rows of `directions`.
  ShallowReluNetwork(Eigen::VectorXd a, double b, Eigen::MatrixXd directions,
                     Eigen::VectorXd offsets, Eigen::VectorXd coefficients);

  int dimension() const { return static_cast<int>(a_.size()); }
  int width() const { return static_cast<int>(offsets_.size()); }

  const Eigen::VectorXd& a() const { return a_; }
  double b() const { return b_; }
  const Eigen::MatrixXd& directions() const { return directions_; }
  const Eigen::VectorXd& offsets() const { return offsets_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  RidgeUnit unit(int i) const;

  double eval(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  /// a + sum_i c_i relu_step(alpha_i^T x - t_i) alpha_i. Equals the gradient
  /// wherever x is off every kink.
  Eigen::VectorXd eval_grad(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// Smallest |alpha_i^T x - t_i|; infinity for a network without units.
  double kink_distance(const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  void validate() const;

  Eigen::VectorXd a_;
  double b_;
  Eigen::MatrixXd directions_;
  Eigen::VectorXd offsets_;
  Eigen::VectorXd coefficients_;
};

/// Theta Phi(W x + b_vec) form of a network.
///
/// Row 0 of W is zero, rows 1..n are the identity and the remaining rows are
/// the directions; b_vec = (1, 0_n, -t); theta = (b, a, c).
struct StackedParameters {
  Eigen::MatrixXd W;
  Eigen::VectorXd b_vec;
  Eigen::RowVectorXd theta;
  int n = 0;
};

StackedParameters stack_parameters(const ShallowReluNetwork& net);

/// Phi(z): identity on the first n+1 entries, relu on the rest.
Eigen::VectorXd stacked_activation(const Eigen::VectorXd& z, int n);

/// theta . Phi(W x + b_vec).
double eval_stacked(const StackedParameters& p, const Eigen::Ref<const Eigen::VectorXd>& x);

/// (1, x, relu(alpha_1^T x - t_1), ..., relu(alpha_m^T x - t_m)).
Eigen::VectorXd feature_vector(const SampleSet& samples, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Jacobian of feature_vector with respect to x, shape (m+n+1) x n, using the
/// relu_step convention on kinks.
Eigen::MatrixXd feature_jacobian(const SampleSet& samples, const Eigen::Ref<const Eigen::VectorXd>& x);

/// {"n", "a", "b", "units": [{"alpha", "t", "c"}]}; doubles are printed in
/// shortest round-trip form.
std::string network_to_json(const ShallowReluNetwork& net);
ShallowReluNetwork network_from_json(std::string_view text);

}  // namespace certirelu
