#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "certirelu/bounds.hpp"
#include "certirelu/fourier.hpp"
#include "certirelu/policy_eval.hpp"

namespace certirelu {

/// Function values and gradients at a fixed set of points.
struct SampledFunction {
  std::vector<Eigen::VectorXd> points;
  std::vector<double> values;
  std::vector<Eigen::VectorXd> gradients;
};

SampledFunction sample_model(const ValueModel& model, const std::vector<Eigen::VectorXd>& points);

/// Rows `x_1..x_n,f,g_1..g_n` (header line optional). Throws IoError.
SampledFunction load_sampled_function(const std::filesystem::path& path, int n);

/// An approximation target together with the certificate its bounds use.
struct Target {
  std::string id;
  ValueModel model;
  SmoothnessCertificate cert;
};

/// V_mod(x) = V(x) r(x) with V = log(cosh(5x))/5 and r the cut-off multiplier.
ValueModel vmod_model(std::shared_ptr<const Multiplier> r);

/// V_mod on [-1, 1] with the certificate (n=1, k=4, rho=2, R=1, uniform p_min).
Target paper_vmod_target(std::shared_ptr<const Multiplier> r = nullptr);

/// exp(-pi ||x||^2), self-dual under the transform convention; rho is the
/// supremum of exp(-pi w^2)(1 + w^k) found by a radial scan.
Target gaussian_target(int n, double R, int k);

/// Points of the tensor grid with `points_per_axis` nodes on [-R, R] per axis
/// that lie in the closed ball of radius R. For n = 1 this is the full grid.
std::vector<Eigen::VectorXd> ball_grid(int n, double R, int points_per_axis);

/// Grids for the smoothness scan of a one-dimensional target.
struct RhoGrid {
  double x_half_width = 2.5;
  double x_step = 1.0 / 500.0;
  double omega_max = 60.0;
  double omega_step = 0.01;
};

/// Forward transform of a target id ("paper_vmod" or "gaussian") on `grid`.
Spectrum target_spectrum(const std::string& id, const RhoGrid& grid);

/// Forward transform of `x,f` samples on an equispaced grid with an odd count.
Spectrum sample_file_spectrum(const std::filesystem::path& path, const RhoGrid& grid);

}  // namespace certirelu
