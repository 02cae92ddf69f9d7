#include "certirelu/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "certirelu/errors.hpp"

namespace certirelu {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

double max_abs_omega(const std::vector<double>& omega) {
  double w = 0.0;
  for (double o : omega) w = std::max(w, std::abs(o));
  return w;
}

}  // namespace

std::vector<double> symmetric_grid(double half_width, double step) {
  if (!(step > 0.0) || !(half_width >= 0.0)) {
    throw PreconditionError("symmetric_grid requires step > 0 and half_width >= 0");
  }
  const long half = std::lround(half_width / step);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(2 * half + 1));
  for (long i = -half; i <= half; ++i) grid.push_back(static_cast<double>(i) * step);
  return grid;
}

std::vector<double> simpson_weights(std::size_t count, double h) {
  if (count < 3 || count % 2 == 0) {
    throw PreconditionError("Simpson quadrature needs an odd number (>= 3) of nodes");
  }
  std::vector<double> w(count, 2.0 * h / 3.0);
  for (std::size_t i = 1; i + 1 < count; i += 2) w[i] = 4.0 * h / 3.0;
  w.front() = h / 3.0;
  w.back() = h / 3.0;
  return w;
}

Spectrum forward_ft_sampled(double x0, double h, std::span<const double> values,
                            const std::vector<double>& omega_grid) {
  if (omega_grid.empty()) throw EmptyRequest("forward_ft: empty frequency grid");
  const std::vector<double> w = simpson_weights(values.size(), h);
  std::vector<double> weighted(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) weighted[j] = w[j] * values[j];

  Spectrum out;
  out.omega = omega_grid;
  out.values.resize(omega_grid.size());
  for (std::size_t i = 0; i < omega_grid.size(); ++i) {
    const double phase_rate = -kTwoPi * omega_grid[i];
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double phase = phase_rate * (x0 + static_cast<double>(j) * h);
      re += weighted[j] * std::cos(phase);
      im += weighted[j] * std::sin(phase);
    }
    out.values[i] = {re, im};
  }
  return out;
}

Spectrum forward_ft(const std::function<double(double)>& f, Interval support,
                    const std::vector<double>& omega_grid, double quad_step) {
  if (omega_grid.empty()) throw EmptyRequest("forward_ft: empty frequency grid");
  if (!(support.hi > support.lo)) throw PreconditionError("forward_ft: empty support interval");
  if (!(quad_step > 0.0)) throw PreconditionError("forward_ft: quad_step must be positive");
  const double wmax = max_abs_omega(omega_grid);
  if (wmax > 0.0 && quad_step > 1.0 / (8.0 * wmax)) {
    throw ResolutionError("forward_ft: quad_step too coarse for the largest requested frequency");
  }
  auto panels = static_cast<std::size_t>(std::ceil((support.hi - support.lo) / quad_step - 1e-9));
  panels = std::max<std::size_t>(2, panels + (panels % 2));
  const double h = (support.hi - support.lo) / static_cast<double>(panels);
  std::vector<double> samples(panels + 1);
  for (std::size_t j = 0; j <= panels; ++j) samples[j] = f(support.lo + static_cast<double>(j) * h);
  return forward_ft_sampled(support.lo, h, samples, omega_grid);
}

FourierProfile estimate_rho(const Spectrum& spectrum, int k, double edge_fraction) {
  if (spectrum.omega.empty()) throw EmptyRequest("estimate_rho: empty spectrum");
  if (spectrum.omega.size() != spectrum.values.size()) {
    throw InvalidDimension("estimate_rho: frequency and value counts differ");
  }
  FourierProfile p;
  p.omega_grid = spectrum.omega;
  p.f_hat = spectrum.values;
  p.k = k;
  p.weighted.resize(spectrum.omega.size());
  for (std::size_t i = 0; i < spectrum.omega.size(); ++i) {
    const double w = std::abs(spectrum.omega[i]);
    p.weighted[i] = std::abs(spectrum.values[i]) * (1.0 + std::pow(w, k));
  }
  const auto it = std::max_element(p.weighted.begin(), p.weighted.end());
  p.rho_hat = *it;
  p.argmax_omega = p.omega_grid[static_cast<std::size_t>(it - p.weighted.begin())];
  p.edge_value = std::max(p.weighted.front(), p.weighted.back());
  p.tail_bound = p.edge_value;
  p.edge_ratio = p.rho_hat > 0.0 ? p.edge_value / p.rho_hat : 0.0;

  // Grid is sorted and symmetric: pair i with its mirror.
  const std::size_t count = p.f_hat.size();
  for (std::size_t i = 0; i < count; ++i) {
    const auto mirror = p.f_hat[count - 1 - i];
    p.max_conjugate_asymmetry =
        std::max(p.max_conjugate_asymmetry, std::abs(mirror - std::conj(p.f_hat[i])));
  }

  if (p.rho_hat > 0.0 && p.edge_ratio > edge_fraction) {
    throw GridTooNarrow("estimate_rho: weighted spectrum at the grid edge is " +
                        std::to_string(p.edge_ratio) + " of its maximum");
  }
  return p;
}

double estimate_rho_radial(std::span<const double> radius, std::span<const double> magnitude, int k,
                           double edge_fraction) {
  if (radius.empty()) throw EmptyRequest("estimate_rho_radial: empty profile");
  if (radius.size() != magnitude.size()) {
    throw InvalidDimension("estimate_rho_radial: radius and magnitude counts differ");
  }
  double best = 0.0;
  double edge = 0.0;
  for (std::size_t i = 0; i < radius.size(); ++i) {
    const double v = std::abs(magnitude[i]) * (1.0 + std::pow(std::abs(radius[i]), k));
    best = std::max(best, v);
    if (i + 1 == radius.size()) edge = v;
  }
  if (best > 0.0 && edge > edge_fraction * best) {
    throw GridTooNarrow("estimate_rho_radial: profile has not decayed at the largest radius");
  }
  return best;
}

double multiplier_hat(double omega) {
  const double a = sinc(std::numbers::pi * omega / 5.0);
  const double b = sinc(3.0 * std::numbers::pi * omega);
  return 3.0 * a * a * a * a * a * b;
}

Multiplier::Multiplier(double omega_cutoff, double quad_step) : cutoff_(omega_cutoff), step_(quad_step) {
  if (!(omega_cutoff >= 40.0)) throw PreconditionError("multiplier: omega_cutoff must be >= 40");
  if (!(quad_step > 0.0 && quad_step <= 0.01)) {
    throw PreconditionError("multiplier: quad_step must lie in (0, 0.01]");
  }
  auto panels = static_cast<std::size_t>(std::ceil(2.0 * omega_cutoff / quad_step - 1e-9));
  panels += panels % 2;
  const double h = 2.0 * omega_cutoff / static_cast<double>(panels);
  const std::vector<double> w = simpson_weights(panels + 1, h);
  omega_.resize(panels + 1);
  weighted_hat_.resize(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) {
    omega_[i] = -omega_cutoff + static_cast<double>(i) * h;
    weighted_hat_[i] = w[i] * multiplier_hat(omega_[i]);
  }
}

std::complex<double> Multiplier::evaluate(double x) const {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    const double phase = kTwoPi * omega_[i] * x;
    re += weighted_hat_[i] * std::cos(phase);
    im += weighted_hat_[i] * std::sin(phase);
  }
  return {re, im};
}

double Multiplier::derivative(double x) const {
  // d/dx e^{j 2 pi w x} = j 2 pi w e^{j 2 pi w x}; real part below.
  double re = 0.0;
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    re -= weighted_hat_[i] * kTwoPi * omega_[i] * std::sin(kTwoPi * omega_[i] * x);
  }
  return re;
}

MultiplierSamples multiplier(const std::vector<double>& x_grid, double omega_cutoff, double quad_step) {
  const Multiplier r(omega_cutoff, quad_step);
  MultiplierSamples out;
  out.values.reserve(x_grid.size());
  for (double x : x_grid) {
    const auto v = r.evaluate(x);
    out.values.push_back(v.real());
    out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
  }
  return out;
}

}  // namespace certirelu
