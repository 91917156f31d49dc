// Compactly supported test functions, their Mellin transforms and vertical line integrals.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hm/special.hpp"

namespace hm {

enum class TestKind { Bump, Plateau };

/// Smooth nonnegative weight supported on [a, b] with 0 < a < b.
struct TestFunction {
  TestKind kind = TestKind::Bump;
  double a = 1.0, b = 2.0;
  double ramp = 0.1;  // plateau only

  /// exp(1 - 1/(1 - u^2)), u = (2x - a - b)/(b - a); peak 1 at the midpoint.
  static TestFunction bump(double a, double b);
  /// 1 on [a + ramp, b - ramp] with C-infinity ramps down to 0 at a and b.
  static TestFunction plateau(double a, double b, double ramp = 0.1);

  double operator()(double x) const;
  std::string describe() const;
};

/// f^(s) = int_0^inf f(t) t^{s-1} dt by adaptive composite Gauss-Legendre
/// (panel doubling until the change is below tol * max(1, b^{Re s})).
cplx mellin_transform(const TestFunction& f, cplx s, double tol = 1e-13);
/// d^k/ds^k f^(s) = int f(t) t^{s-1} (log t)^k dt.
cplx mellin_transform_derivative(const TestFunction& f, cplx s, int k, double tol = 1e-13);

/// A fixed quadrature rule for f^ that is accurate for |Im s| <= t_max.
/// Built once and shared across threads (read only after construction).
class MellinTable {
 public:
  MellinTable(const TestFunction& f, double t_max);
  cplx operator()(cplx s) const { return eval(s, 0); }
  cplx eval(cplx s, int derivative) const;
  double t_max() const { return t_max_; }
  std::size_t nodes() const { return log_x_.size(); }
  const TestFunction& function() const { return f_; }

 private:
  TestFunction f_;
  double t_max_;
  std::vector<double> log_x_, weight_;  // weight = w_k f(x_k)
};

/// |f^(sigma + it)| <= C (1 + |t|)^{-E}, C fitted on a sample of t.
struct DecayCertificate {
  double C = 0.0, E = 0.0;
};
DecayCertificate fit_decay(const TestFunction& f, double sigma_lo, double sigma_hi, double E,
                           double t_max = 100.0);

struct LineIntegral {
  cplx value;
  double T = 0.0;      // truncation height actually used
  double error = 0.0;  // quadrature + tail estimate
  bool converged = true;
};

/// (1/2 pi) int g(sigma + i t) dt, marching outward over unit panels (Gauss-Kronrod 7/15)
/// until the estimated tail drops below tol. With conjugate_symmetric the integrand is
/// assumed to satisfy g(conj s) = conj g(s) and only t >= 0 is sampled.
LineIntegral vertical_line_integral(const std::function<cplx(cplx)>& g, double sigma, double tol,
                                    bool conjugate_symmetric = false, double t_limit = 1e4);

/// Circle quadrature about z0: the Laurent coefficient a_n of h (trapezoid rule, m points).
cplx laurent_coefficient(const std::function<cplx(cplx)>& h, cplx z0, double radius, int n, int m = 64);

}  // namespace hm
