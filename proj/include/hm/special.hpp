// Gamma, zeta, Dirichlet beta and the Dedekind zeta function of Q(i).
#pragma once

#include <complex>

namespace hm {

using cplx = std::complex<double>;

struct Estimate {
  cplx value;
  double error = 0.0;  // absolute error estimate
};

/// log Gamma(z): Stirling series after an upward shift, reflection for Re z < 1/2.
/// The imaginary part is correct modulo 2 pi.
cplx log_gamma(cplx z);
double log_gamma(double x);
cplx gamma_complex(cplx s);
/// Gamma(a)/Gamma(b) through log Gamma, avoiding overflow.
cplx gamma_ratio(cplx a, cplx b);

/// Hurwitz zeta sum_{k>=0} (k+a)^{-s} by Euler-Maclaurin, 0 < a <= 1.
Estimate hurwitz_zeta_est(cplx s, double a);
cplx hurwitz_zeta(cplx s, double a);

Estimate zeta_riemann_est(cplx s);
cplx zeta_riemann(cplx s);

/// beta(s) = sum (-1)^k (2k+1)^{-s}; alternating acceleration for |Im s| <= 100, Hurwitz above.
Estimate beta_dirichlet_est(cplx s);
cplx beta_dirichlet(cplx s);
/// The Hurwitz route 4^{-s}(zeta(s,1/4) - zeta(s,3/4)), kept separate for cross-checks.
cplx beta_via_hurwitz(cplx s);

/// zeta_K = zeta * beta; omit_two removes the Euler factor at (1+i).
Estimate zeta_K_est(cplx s, bool omit_two = false);
cplx zeta_K(cplx s, bool omit_two = false);

/// Upper incomplete gamma Gamma(a, y) for y > 0.
cplx upper_gamma(cplx a, double y);
double upper_gamma(double a, double y);

}  // namespace hm
