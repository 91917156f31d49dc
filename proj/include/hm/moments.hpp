// Smoothed first moment of L(1/2, chi_m) and the smoothed double character sum, with their main terms.
#pragma once

#include <string>
#include <vector>

#include "hm/dds.hpp"
#include "hm/mellin.hpp"

namespace hm {

struct FirstMomentValue {
  i64 X = 0;
  double value = 0.0;
  double error = 0.0;     // accumulated L-value error estimates
  i64 terms = 0;          // number of m in the support
  i64 square_terms = 0;     // m a square: trivial character, L(1/2) = zeta_K(1/2) times Euler factors < 0
  i64 negative_values = 0;  // negative central values among the remaining m (none expected)
};

/// sum over primary m of L(1/2, chi_m) phi(N(m)/X), for each X of the grid (shared L-value pass).
std::vector<FirstMomentValue> first_moment_empirical(const std::vector<i64>& xs, const TestFunction& phi,
                                                     LValueTable* table = nullptr);
FirstMomentValue first_moment_empirical(i64 X, const TestFunction& phi, LValueTable* table = nullptr);

struct LinearFit {
  double c1 = 0.0, c0 = 0.0;  // y ~ c1 X log X + c0 X
  std::vector<double> residuals;
};
/// Least squares of y against {X log X, X}. Throws DomainError for fewer than two distinct X.
LinearFit fit_xlogx(const std::vector<double>& xs, const std::vector<double>& ys);

/// Laurent data of A(1/2, w) at the double pole w = 1: A = a2/(w-1)^2 + a1/(w-1) + ...
struct FirstMomentPole {
  double a2 = 0.0, a1 = 0.0;
  double gamma2 = 0.0;         // constant term of zeta_2(u) at u = 1
  double polar_constant = 0.0; // constant term of R(1/2 - t) at t = 0
};
FirstMomentPole first_moment_pole(ResidueForm form = ResidueForm::Quadratic);

struct FirstMomentMain {
  LinearFit fit;
  double contour_c1 = 0.0, contour_c0 = 0.0;
  double rel_diff_c1 = 0.0, rel_diff_c0 = 0.0;
  std::vector<double> main_fit, main_contour;  // per X
};
FirstMomentMain first_moment_main(const std::vector<double>& xs, const std::vector<double>& empirical,
                                  const TestFunction& phi, ResidueForm form = ResidueForm::Quadratic);

/// Weight vector for one side of the character sum: primary elements with a X < N < b X and f(N/X).
struct SideWeights {
  std::vector<Primary> elements;
  std::vector<double> weights;
};
SideWeights side_weights(double X, const TestFunction& f);

/// Fixed-point scale for the exact accumulator: each term is rounded to a multiple of 2^-48.
inline constexpr double kCharSumScale = 0x1p48;
/// sum_m sum_n (m/n) wm wn as an exact fixed-point integer (units of 2^-48).
i128 char_sum_kernel_serial(const SideWeights& m, const SideWeights& n);
i128 char_sum_kernel_parallel(const SideWeights& m, const SideWeights& n);
double fixed_to_double(i128 v);

/// S(X, Y; phi, psi) = sum_m sum_n (m/n) phi(N(m)/X) psi(N(n)/Y) over primary m, n.
double char_sum_empirical(double X, double Y, const TestFunction& phi, const TestFunction& psi);

enum class MainTermKernel {
  Residue,     // polar-line residue, pi^{3-2s}
  CubicPi,     // the same with pi^{3-3s}
  CubicPiHalf  // half of CubicPi
};
const char* main_term_kernel_name(MainTermKernel k);

struct DIntegral {
  double boundary = 0.0;  // (phi^(1) psi^(1/2) a^{1/2} + psi^(1) phi^(1/2) a) / 2
  double integral = 0.0;  // contour part, normalized so that main = pi^2/(48 zeta_K(2)) X^{3/2} (boundary + integral)
  double error = 0.0;
  double T = 0.0;
  bool converged = true;
};
/// D(alpha; phi, psi) with the chosen kernel on the line Re s = sigma.
DIntegral d_alpha(double alpha, const TestFunction& phi, const TestFunction& psi,
                  MainTermKernel kernel = MainTermKernel::Residue, double sigma = 0.75, double tol = 1e-8);
struct CharSumMain {
  double value = 0.0;
  DIntegral d;
};
CharSumMain char_sum_main(double X, double Y, const TestFunction& phi, const TestFunction& psi,
                          MainTermKernel kernel = MainTermKernel::Residue);

struct ExponentFit {
  double theta = 0.0;
  double stderr_theta = 0.0;
  int used = 0;
};
/// Slope of log|residual| against log X; points with |residual| < 1e-9 |main| are dropped.
/// Throws DomainError when fewer than four points remain.
ExponentFit residual_exponent(const std::vector<double>& xs, const std::vector<double>& residuals,
                              const std::vector<double>& mains);

struct MomentRow {
  double X = 0, Y = 0;
  double empirical = 0, main = 0, residual = 0;
  double theta_running = 0;  // NaN until two points are available
  std::string flags;
};

}  // namespace hm
