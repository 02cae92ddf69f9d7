#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into certirelu except where a test explicitly compares against it.

#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/Core>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

struct BigConstants {
  Big A, beta, L, kappa1, kappa2, zeta0, zeta1, a_cap, b_cap;
  Big c_cap(int m) const { return c_cap_num / Big(m); }
  Big c_cap_num;
};

inline Big big_pi() { return boost::math::constants::pi<Big>(); }

inline Big big_sphere_area(int n) {
  if (n == 1) return Big(2);
  const Big half_n = Big(n) / 2;
  return 2 * pow(big_pi(), half_n) / boost::math::tgamma(half_n);
}

/// The theorem's constants evaluated in 50-digit arithmetic straight from the
/// printed formulas.
inline BigConstants big_constants(int n, double rho_d, double R_d, double p_min_d) {
  const Big pi = big_pi();
  const Big rho(rho_d), R(R_d), p(p_min_d);
  BigConstants c;
  c.A = big_sphere_area(n);
  c.beta = 16 * pi * pi * rho * R / p + (4 + 8 * pi * R) * c.A * rho;
  c.L = 8 * pi * pi * rho / p + 8 * pi * c.A * rho;
  c.kappa1 = 4 * c.beta;
  c.kappa2 = c.beta * sqrt(Big(2 * n));
  c.zeta0 = 64 * pi * pi * Big(n + 1) * rho / p;
  c.zeta1 = 8 * sqrt(Big(2 * n)) * pi * pi * rho / p;
  c.a_cap = 4 * pi * c.A * rho;
  c.b_cap = (2 + 4 * pi * R) * c.A * rho;
  c.c_cap_num = 8 * pi * pi * rho / p;
  return c;
}

inline Big big_rhs_function(const BigConstants& c, int m, double delta) {
  const Big sm = sqrt(Big(m));
  return (1 + c.kappa1 * sqrt(log(Big(2) / Big(delta))) +
          c.kappa2 * sqrt(log(2 * (1 + 2 * c.L * sm)))) /
         sm;
}

inline Big big_rhs_grad2(const BigConstants& c, int n, int m, double delta) {
  return (c.zeta0 * sqrt(log(Big(m + 1))) + c.zeta1 * sqrt(log(Big(2 * n) / Big(delta)))) /
         sqrt(Big(m));
}

inline double rel_diff(const Big& reference, double value) {
  return static_cast<double>(abs(Big(value) - reference) / abs(reference));
}

/// CDF of the sum of n independent U(0,1) variables.
inline double irwin_hall_cdf(double s, int n) {
  if (s <= 0) return 0.0;
  if (s >= n) return 1.0;
  double total = 0.0;
  double binom = 1.0;
  double fact = 1.0;
  for (int i = 1; i <= n; ++i) fact *= i;
  for (int k = 0; k <= static_cast<int>(std::floor(s)); ++k) {
    total += (k % 2 ? -1.0 : 1.0) * binom * std::pow(s - k, n);
    binom = binom * (n - k) / (k + 1);
  }
  return total / fact;
}

/// r = 1_[-3/2,3/2] * (box of width 1/5, unit mass)^{*5}. The 5-fold box
/// convolution is the law of 0.2 S - 0.5 with S Irwin-Hall(5), so
/// r(x) = F(x + 3/2) - F(x - 3/2) with F that law's CDF.
inline double box_convolution_multiplier(double x) {
  auto F = [](double y) { return irwin_hall_cdf((y + 0.5) / 0.2, 5); };
  return F(x + 1.5) - F(x - 1.5);
}

/// sup over w of exp(-pi w^2)(1 + |w|^k) by a uniform scan with `points` nodes on [0, w_max].
inline double gaussian_rho_scan(int k, double w_max = 10.0, long points = 1'000'000) {
  double best = 0.0;
  for (long i = 0; i < points; ++i) {
    const double w = w_max * static_cast<double>(i) / static_cast<double>(points - 1);
    best = std::max(best, std::exp(-std::numbers::pi * w * w) * (1.0 + std::pow(w, k)));
  }
  return best;
}

/// Central differences of f at x, step h per coordinate.
inline Eigen::VectorXd central_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                        const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2 * h);
  }
  return g;
}

/// Naive sum of the network definition, without any matrix products.
inline double naive_network(const Eigen::VectorXd& a, double b, const Eigen::MatrixXd& dirs,
                            const Eigen::VectorXd& t, const Eigen::VectorXd& c, const Eigen::VectorXd& x) {
  double s = b;
  for (Eigen::Index j = 0; j < x.size(); ++j) s += a[j] * x[j];
  for (Eigen::Index i = 0; i < dirs.rows(); ++i) {
    double z = -t[i];
    for (Eigen::Index j = 0; j < x.size(); ++j) z += dirs(i, j) * x[j];
    s += c[i] * (z > 0 ? z : 0.0);
  }
  return s;
}

}  // namespace oracle
