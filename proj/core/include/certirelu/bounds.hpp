#pragma once

#include <string>

namespace certirelu {

/// Everything the probabilistic error bounds consume about a target function
/// and the sampling density.
///
///   sup_w |f^(w)| (1 + |w|^k) <= rho,   k >= n + 3,
///   density >= p_min on S^{n-1} x [-R, R].
struct SmoothnessCertificate {
  int n = 1;
  int k = 4;
  double rho = 1.0;
  double R = 1.0;
  double p_min = 0.25;

  /// Throws InvalidCertificate when an invariant fails.
  void validate() const;
};

/// Surface area of S^{n-1}: 2 pi^{n/2} / Gamma(n/2). A_0 = 2 (counting measure).
double sphere_area(int n);

/// Derived constants of the function/gradient approximation theorem.
struct BoundReport {
  SmoothnessCertificate cert;
  double A = 0.0;  ///< sphere area A_{n-1}
  double beta = 0.0;
  double L = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double zeta0 = 0.0;
  double zeta1 = 0.0;
  double a_cap = 0.0;  ///< bound on ||a||_2
  double b_cap = 0.0;  ///< bound on |b|

  /// Bound on every |c_i| for a network of width m.
  double c_cap(int m) const;
};

BoundReport derived_constants(const SmoothnessCertificate& cert);

/// Placement of the covering term in the sup-norm function bound.
///
/// `grouped` keeps kappa2 sqrt(log(2(1 + 2 R L sqrt(m)))) inside the 1/sqrt(m)
/// factor, which is what the importance-sampling lemma proves. `as_typeset`
/// leaves it outside; it does not vanish as m grows and is kept only so the
/// two readings can be compared.
enum class FunctionBoundForm { grouped, as_typeset };

enum class GradNorm { two, inf };

/// Sup-norm function error bound holding with probability >= 1 - delta/2,
/// defined for m >= 1.
double rhs_function(const BoundReport& report, int m, double delta,
                    FunctionBoundForm form = FunctionBoundForm::grouped);

/// Gradient error bound, m >= n + 1. `two` is the theorem's joint-event bound
/// (zeta0, zeta1); `inf` is the per-coordinate bound
/// (8 pi^2 rho / p_min)(8 sqrt((n+1) log(m+1)) + sqrt(2 log(n/delta))) / sqrt(m).
double rhs_grad(const BoundReport& report, int m, double delta, GradNorm norm);

/// Joint value-and-gradient bound: max of the function and 2-norm gradient bounds.
double rhs_policy_eval(const BoundReport& report, int m, double delta);

std::string to_string(FunctionBoundForm form);
std::string to_string(GradNorm norm);

}  // namespace certirelu
