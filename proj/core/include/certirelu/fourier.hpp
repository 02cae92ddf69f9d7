#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace certirelu {

// Transform convention throughout: f^(w) = \int e^{-j 2 pi w x} f(x) dx and
// f(x) = \int e^{j 2 pi w x} f^(w) dw (2 pi in the exponent, none in the measure).

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Values of a transform on a frequency grid.
struct Spectrum {
  std::vector<double> omega;
  std::vector<std::complex<double>> values;
};

/// -half_width, ..., half_width with the given step (2 round(half_width/step) + 1 points).
std::vector<double> symmetric_grid(double half_width, double step);

/// Composite Simpson weights for `count` (odd) equispaced nodes of spacing h.
std::vector<double> simpson_weights(std::size_t count, double h);

/// Forward transform of f over `support` by composite Simpson quadrature.
///
/// The support is split into an even number of panels no wider than
/// `quad_step`. Throws ResolutionError when quad_step > 1/(8 max|w|).
Spectrum forward_ft(const std::function<double(double)>& f, Interval support,
                    const std::vector<double>& omega_grid, double quad_step);

/// Same as forward_ft for samples already taken on the equispaced grid
/// x0, x0 + h, ..., (odd count).
Spectrum forward_ft_sampled(double x0, double h, std::span<const double> values,
                            const std::vector<double>& omega_grid);

/// Result of scanning sup |f^(w)| (1 + |w|^k) over a grid.
struct FourierProfile {
  std::vector<double> omega_grid;
  std::vector<std::complex<double>> f_hat;
  std::vector<double> weighted;  ///< |f^(w)| (1 + |w|^k)
  int k = 0;
  double rho_hat = 0.0;
  double argmax_omega = 0.0;
  double edge_value = 0.0;     ///< larger of the two end-point weighted values
  double edge_ratio = 0.0;     ///< edge_value / rho_hat (0 when rho_hat = 0)
  double tail_bound = 0.0;     ///< empirical: the edge value, not a proof
  double max_conjugate_asymmetry = 0.0;  ///< max |f^(-w) - conj f^(w)| over the grid
};

/// Builds the profile and checks that the weighted spectrum at the grid ends
/// is below `edge_fraction` of its maximum; throws GridTooNarrow otherwise.
FourierProfile estimate_rho(const Spectrum& spectrum, int k, double edge_fraction = 0.01);

/// Radial variant for n >= 2: `magnitude[i]` is sup over |w| = radius[i] of |f^(w)|.
/// Returns sup magnitude (1 + radius^k) with the same edge check.
double estimate_rho_radial(std::span<const double> radius, std::span<const double> magnitude, int k,
                           double edge_fraction = 0.01);

/// 3 (sin(pi w/5)/(pi w/5))^5 sin(3 pi w)/(3 pi w), with the removable
/// singularity at w = 0 filled in (value 3).
double multiplier_hat(double omega);

/// Cut-off multiplier r(x) recovered by numerical inverse transform of
/// multiplier_hat on [-omega_cutoff, omega_cutoff].
///
/// Equal to 1 on [-1, 1] and 0 outside [-2, 2] up to truncation error.
class Multiplier {
 public:
  /// Throws PreconditionError unless omega_cutoff >= 40 and 0 < quad_step <= 0.01.
  explicit Multiplier(double omega_cutoff = 40.0, double quad_step = 0.01);

  std::complex<double> evaluate(double x) const;
  double value(double x) const { return evaluate(x).real(); }
  double derivative(double x) const;

  double omega_cutoff() const { return cutoff_; }
  double quad_step() const { return step_; }

 private:
  double cutoff_;
  double step_;
  std::vector<double> omega_;
  std::vector<double> weighted_hat_;  ///< Simpson weight times multiplier_hat
};

struct MultiplierSamples {
  std::vector<double> values;  ///< real part of the inverse transform
  double max_imag = 0.0;       ///< diagnostic; zero for an exact real transform
};

MultiplierSamples multiplier(const std::vector<double>& x_grid, double omega_cutoff = 40.0,
                             double quad_step = 0.01);

}  // namespace certirelu
