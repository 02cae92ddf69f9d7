#include "certirelu/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "certirelu/errors.hpp"

namespace certirelu {

namespace {

constexpr double kPi = std::numbers::pi;

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
}

}  // namespace

void SmoothnessCertificate::validate() const {
  if (n < 1) throw InvalidCertificate("certificate dimension must be at least 1");
  if (k < n + 3) throw InvalidCertificate("smoothness order k must satisfy k >= n + 3");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidCertificate("rho must be positive");
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidCertificate("R must be positive");
  if (!(p_min > 0.0) || !std::isfinite(p_min)) throw InvalidCertificate("p_min must be positive");
}

double sphere_area(int n) {
  if (n < 1) throw InvalidDimension("sphere_area requires n >= 1");
  if (n == 1) return 2.0;
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double BoundReport::c_cap(int m) const {
  if (m < 1) throw PreconditionError("c_cap requires m >= 1");
  return 8.0 * kPi * kPi * cert.rho / (m * cert.p_min);
}

BoundReport derived_constants(const SmoothnessCertificate& cert) {
  cert.validate();
  const double n = cert.n;
  const double rho = cert.rho;
  const double R = cert.R;
  const double p = cert.p_min;
  const double pi2 = kPi * kPi;

  BoundReport r;
  r.cert = cert;
  r.A = sphere_area(cert.n);
  r.beta = 16.0 * pi2 * rho * R / p + (4.0 + 8.0 * kPi * R) * r.A * rho;
  r.L = 8.0 * pi2 * rho / p + 8.0 * kPi * r.A * rho;
  r.kappa1 = 4.0 * r.beta;
  r.kappa2 = r.beta * std::sqrt(2.0 * n);
  r.zeta0 = 64.0 * pi2 * (n + 1.0) * rho / p;
  r.zeta1 = 8.0 * std::sqrt(2.0 * n) * pi2 * rho / p;
  r.a_cap = 4.0 * kPi * r.A * rho;
  r.b_cap = (2.0 + 4.0 * kPi * R) * r.A * rho;
  return r;
}

double rhs_function(const BoundReport& report, int m, double delta, FunctionBoundForm form) {
  if (m < 1) throw PreconditionError("rhs_function requires m >= 1");
  check_delta(delta);
  const double sm = std::sqrt(static_cast<double>(m));
  const double confidence = report.kappa1 * std::sqrt(std::log(2.0 / delta));
  const double covering =
      report.kappa2 * std::sqrt(std::log(2.0 * (1.0 + 2.0 * report.cert.R * report.L * sm)));
  if (form == FunctionBoundForm::as_typeset) return (1.0 + confidence) / sm + covering;
  return (1.0 + confidence + covering) / sm;
}

double rhs_grad(const BoundReport& report, int m, double delta, GradNorm norm) {
  const int n = report.cert.n;
  if (m < n + 1) throw PreconditionError("rhs_grad requires m >= n + 1");
  check_delta(delta);
  const double sm = std::sqrt(static_cast<double>(m));
  const double logm = std::log(m + 1.0);
  if (norm == GradNorm::two) {
    return (report.zeta0 * std::sqrt(logm) + report.zeta1 * std::sqrt(std::log(2.0 * n / delta))) /
           sm;
  }
  const double c = 8.0 * kPi * kPi * report.cert.rho / report.cert.p_min;
  const double log_n_delta = std::log(n / delta);
  return c / sm * (8.0 * std::sqrt((n + 1.0) * logm) + std::sqrt(2.0 * log_n_delta));
}

double rhs_policy_eval(const BoundReport& report, int m, double delta) {
  return std::max(rhs_function(report, m, delta), rhs_grad(report, m, delta, GradNorm::two));
}

std::string to_string(FunctionBoundForm form) {
  return form == FunctionBoundForm::grouped ? "grouped" : "as_typeset";
}

std::string to_string(GradNorm norm) { return norm == GradNorm::two ? "two" : "inf"; }

}  // namespace certirelu
