#include "hm/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "hm/gaussian.hpp"

namespace hm {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} for k = 1..20
constexpr std::array<double, 20> kBernoulli = {
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
    8553103.0 / 6,
    -23749461029.0 / 870,
    8615841276005.0 / 14322,
    -7709321041217.0 / 510,
    2577687858367.0 / 6,
    -26315271553053477373.0 / 1919190,
    2929993913841559.0 / 6,
    -261082718496449122051.0 / 13530,
};

// B_{2k}/(2k)!
const std::array<double, 20>& em_coefficients() {
  static const std::array<double, 20> c = [] {
    std::array<double, 20> out{};
    double fact = 1.0;
    for (int k = 1; k <= 20; ++k) {
      fact *= (2.0 * k - 1) * (2.0 * k);
      out[k - 1] = kBernoulli[k - 1] / fact;
    }
    return out;
  }();
  return c;
}

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx log_sin_pi(cplx z) {
  const double y = z.imag();
  if (std::abs(y) < 20.0) return std::log(std::sin(kPi * z));
  if (y < 0) return std::conj(log_sin_pi(std::conj(z)));
  const cplx I(0, 1);
  return -I * kPi * z + std::log(cplx(0, 0.5)) + std::log(1.0 - std::exp(2.0 * I * kPi * z));
}

cplx stirling(cplx w) {
  cplx r = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2 * kPi);
  const cplx w2 = w * w;
  cplx wp = w;
  for (int k = 1; k <= 12; ++k) {
    r += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1)) / wp;
    wp *= w2;
  }
  return r;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) throw DomainError("log_gamma: pole");
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  cplx w = z, prod = 1.0;
  while (std::abs(w) < 15.0) {
    prod *= w;
    w += 1.0;
  }
  return stirling(w) - std::log(prod);
}

double log_gamma(double x) { return std::lgamma(x); }

cplx gamma_complex(cplx s) {
  if (is_nonpositive_integer(s)) throw DomainError("gamma_complex: pole");
  if (s.imag() == 0.0) return std::tgamma(s.real());
  return std::exp(log_gamma(s));
}

cplx gamma_ratio(cplx a, cplx b) {
  if (is_nonpositive_integer(a)) throw DomainError("gamma_ratio: pole in numerator");
  if (is_nonpositive_integer(b)) return 0.0;
  return std::exp(log_gamma(a) - log_gamma(b));
}

Estimate hurwitz_zeta_est(cplx s, double a) {
  if (s == cplx(1.0, 0.0)) throw DomainError("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("hurwitz_zeta: a must lie in (0, 1]");
  const double t = std::abs(s.imag());
  const int n = static_cast<int>(std::max(30.0, t + 10.0 - s.real()));
  cplx sum = 0.0;
  double abs_sum = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    const cplx term = std::exp(-s * std::log(k + a));
    sum += term;
    abs_sum += std::abs(term);
  }
  const double x = n + a;
  const double lx = std::log(x);
  const cplx xs = std::exp(-s * lx);
  sum += x * xs / (s - 1.0) + 0.5 * xs;
  const auto& c = em_coefficients();
  cplx p = s * xs / x;  // (s)_{2j-1} x^{-s-2j+1} for j = 1
  double err = 0.0;
  for (int j = 1; j <= 20; ++j) {
    const cplx term = c[j - 1] * p;
    sum += term;
    err = std::abs(term);
    if (err < 1e-17 * std::abs(sum)) break;
    p *= (s + (2.0 * j - 1)) * (s + 2.0 * j) / (x * x);
  }
  return {sum, err + 2.2e-16 * (1.0 + std::abs(s) * lx) * (abs_sum + std::abs(sum))};
}

cplx hurwitz_zeta(cplx s, double a) { return hurwitz_zeta_est(s, a).value; }

Estimate zeta_riemann_est(cplx s) {
  if (s == cplx(1.0, 0.0)) throw DomainError("zeta_riemann: pole at s = 1");
  return hurwitz_zeta_est(s, 1.0);
}

cplx zeta_riemann(cplx s) { return zeta_riemann_est(s).value; }

cplx beta_via_hurwitz(cplx s) {
  if (s == cplx(1.0, 0.0)) return kPi / 4;
  return std::exp(-s * std::log(4.0)) * (hurwitz_zeta(s, 0.25) - hurwitz_zeta(s, 0.75));
}

Estimate beta_dirichlet_est(cplx s) {
  const double t = std::abs(s.imag());
  if (t > 100.0 || s.real() < 0.0) {
    const Estimate a = hurwitz_zeta_est(s, 0.25), b = hurwitz_zeta_est(s, 0.75);
    const cplx scale = std::exp(-s * std::log(4.0));
    return {scale * (a.value - b.value), std::abs(scale) * (a.error + b.error)};
  }
  // Cohen-Villegas-Zagier acceleration of sum (-1)^k (2k+1)^{-s}
  const int n = 24 + static_cast<int>(std::ceil(0.9 * t));
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2;
  double b = -1.0, c = -d;
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * std::exp(-s * std::log(2.0 * k + 1.0));
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  const double err = 2.0 * std::exp(kPi * t / 2) / std::pow(3.0 + std::sqrt(8.0), n);
  return {sum / d, err + 1e-16 * n};
}

cplx beta_dirichlet(cplx s) { return beta_dirichlet_est(s).value; }

Estimate zeta_K_est(cplx s, bool omit_two) {
  if (s == cplx(1.0, 0.0)) throw DomainError("zeta_K: pole at s = 1");
  const Estimate z = zeta_riemann_est(s), b = beta_dirichlet_est(s);
  cplx v = z.value * b.value;
  double e = std::abs(z.value) * b.error + std::abs(b.value) * z.error;
  if (omit_two) {
    const cplx f = 1.0 - std::exp(-s * std::log(2.0));
    v *= f;
    e *= std::abs(f);
  }
  return {v, e};
}

cplx zeta_K(cplx s, bool omit_two) { return zeta_K_est(s, omit_two).value; }

namespace {

template <class T>
T gamma_of(T a) {
  if constexpr (std::is_same_v<T, double>) {
    return std::tgamma(a);
  } else {
    return gamma_complex(a);
  }
}

template <class T>
T upper_gamma_series(T a, double y) {
  // Gamma(a) - gamma(a, y), gamma(a, y) = y^a e^{-y} sum y^k / (a (a+1) ... (a+k))
  T ap = a, del = T(1.0) / a, sum = del;
  for (int k = 0; k < 100000; ++k) {
    ap += 1.0;
    del *= y / ap;
    sum += del;
    if (std::abs(del) < 1e-17 * std::abs(sum)) break;
  }
  return gamma_of(a) - sum * std::exp(a * std::log(y) - y);
}

template <class T>
T upper_gamma_cf(T a, double y) {
  // modified Lentz on the Legendre continued fraction
  constexpr double tiny = 1e-300;
  T b = y + 1.0 - a;
  T c = 1.0 / tiny;
  T d = T(1.0) / b;
  T h = d;
  for (int i = 1; i < 100000; ++i) {
    const T an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = T(1.0) / d;
    const T del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return std::exp(a * std::log(y) - y) * h;
  }
  throw DomainError("upper_gamma: continued fraction did not converge");
}

template <class T>
T upper_gamma_impl(T a, double y) {
  if (!(y > 0.0)) throw DomainError("upper_gamma: y must be positive");
  const double ar = std::real(a);
  const bool integer_pole = std::imag(a) == 0.0 && ar <= 0.0 && ar == std::floor(ar);
  if (integer_pole && y < 1.5) {
    // Gamma(-n, y) from E1(y) by the downward recurrence
    T g = -std::expint(-y);
    const int n = static_cast<int>(-ar);
    for (int k = 1; k <= n; ++k) g = (std::exp(-k * std::log(y) - y) - g) / static_cast<double>(k);
    return g;
  }
  if (y < std::max(1.5, ar + 1.0)) return upper_gamma_series(a, y);
  return upper_gamma_cf(a, y);
}

}  // namespace

cplx upper_gamma(cplx a, double y) {
  if (a.imag() == 0.0) return upper_gamma_impl(a.real(), y);
  return upper_gamma_impl(a, y);
}

double upper_gamma(double a, double y) {
  if (a == 0.5) return std::sqrt(kPi) * std::erfc(std::sqrt(y));
  return upper_gamma_impl(a, y);
}

}  // namespace hm
