#include "hm/mellin.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hm/gaussian.hpp"

namespace hm {

namespace {

using GL20 = boost::math::quadrature::gauss<double, 20>;
using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;
using G7 = boost::math::quadrature::gauss<double, 7>;

double smooth_step(double v) {
  if (v <= 0.0) return 0.0;
  if (v >= 1.0) return 1.0;
  const double p = std::exp(-1.0 / v), q = std::exp(-1.0 / (1.0 - v));
  return p / (p + q);
}

// composite 20-point Gauss-Legendre nodes on [a, b] with n panels
void gl_nodes(const TestFunction& f, int n, std::vector<double>& log_x, std::vector<double>& weight) {
  const auto& xs = GL20::abscissa();
  const auto& ws = GL20::weights();
  log_x.clear();
  weight.clear();
  const double h = (f.b - f.a) / n;
  for (int p = 0; p < n; ++p) {
    const double mid = f.a + (p + 0.5) * h, half = h / 2;
    for (std::size_t k = 0; k < xs.size(); ++k)
      for (int sign : {-1, 1}) {
        const double x = mid + sign * half * xs[k];
        const double fx = f(x);
        if (fx == 0.0) continue;
        log_x.push_back(std::log(x));
        weight.push_back(half * ws[k] * fx);
      }
  }
}

cplx apply_rule(const std::vector<double>& log_x, const std::vector<double>& weight, cplx s, int k) {
  const double sr = s.real() - 1.0, ti = s.imag();
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < log_x.size(); ++j) {
    const double lx = log_x[j];
    double m = weight[j] * std::exp(sr * lx);
    for (int r = 0; r < k; ++r) m *= lx;
    const double ang = ti * lx;
    re += m * std::cos(ang);
    im += m * std::sin(ang);
  }
  return {re, im};
}

cplx mellin_adaptive(const TestFunction& f, cplx s, int k, double tol) {
  const double phase = std::abs(s.imag()) * std::log(f.b / f.a);
  int n = std::max(2, static_cast<int>(std::ceil(phase / 6.0)) + 1);
  std::vector<double> lx, w;
  gl_nodes(f, n, lx, w);
  cplx prev = apply_rule(lx, w, s, k);
  const double scale = std::max(1.0, std::pow(f.b, s.real())) * std::pow(std::max(1.0, std::log(f.b)), k);
  for (int iter = 0; iter < 14; ++iter) {
    n *= 2;
    gl_nodes(f, n, lx, w);
    const cplx cur = apply_rule(lx, w, s, k);
    if (std::abs(cur - prev) < tol * scale) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

TestFunction TestFunction::bump(double a, double b) {
  if (!(a > 0.0 && b > a)) throw DomainError("bump: need 0 < a < b");
  return {TestKind::Bump, a, b, 0.0};
}

TestFunction TestFunction::plateau(double a, double b, double ramp) {
  if (!(a > 0.0 && b > a)) throw DomainError("plateau: need 0 < a < b");
  if (!(ramp > 0.0 && 2 * ramp < b - a)) throw DomainError("plateau: ramps overlap");
  return {TestKind::Plateau, a, b, ramp};
}

double TestFunction::operator()(double x) const {
  if (x <= a || x >= b) return 0.0;
  if (kind == TestKind::Bump) {
    const double u = (2 * x - a - b) / (b - a);
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
  }
  return smooth_step((x - a) / ramp) * smooth_step((b - x) / ramp);
}

std::string TestFunction::describe() const {
  std::ostringstream os;
  os << (kind == TestKind::Bump ? "bump" : "plateau") << "(" << a << "," << b;
  if (kind == TestKind::Plateau) os << ";ramp=" << ramp;
  os << ")";
  return os.str();
}

cplx mellin_transform(const TestFunction& f, cplx s, double tol) { return mellin_adaptive(f, s, 0, tol); }

cplx mellin_transform_derivative(const TestFunction& f, cplx s, int k, double tol) {
  if (k < 0) throw DomainError("mellin_transform_derivative: negative order");
  return mellin_adaptive(f, s, k, tol);
}

MellinTable::MellinTable(const TestFunction& f, double t_max) : f_(f), t_max_(t_max) {
  const double phase = t_max * std::log(f.b / f.a);
  int n = std::max(4, static_cast<int>(std::ceil(phase / 4.0)) + 2);
  gl_nodes(f_, n, log_x_, weight_);
  std::vector<double> lx2, w2;
  for (int iter = 0; iter < 5; ++iter) {
    gl_nodes(f_, 2 * n, lx2, w2);
    double worst = 0.0;
    for (double sigma : {-1.0, 0.5, 2.0})
      for (double t : {0.0, t_max / 2, t_max}) {
        const cplx s(sigma, t);
        const double scale = std::max(1.0, std::pow(f.b, sigma));
        worst = std::max(worst, std::abs(apply_rule(log_x_, weight_, s, 0) - apply_rule(lx2, w2, s, 0)) / scale);
      }
    if (worst < 2e-14) break;
    n *= 2;
    log_x_.swap(lx2);
    weight_.swap(w2);
  }
}

cplx MellinTable::eval(cplx s, int derivative) const { return apply_rule(log_x_, weight_, s, derivative); }

DecayCertificate fit_decay(const TestFunction& f, double sigma_lo, double sigma_hi, double E, double t_max) {
  DecayCertificate c{0.0, E};
  for (double sigma : {sigma_lo, 0.5 * (sigma_lo + sigma_hi), sigma_hi})
    for (double t = 0.0; t <= t_max; t += 0.5)
      c.C = std::max(c.C, std::abs(mellin_transform(f, cplx(sigma, t))) * std::pow(1.0 + t, E));
  return c;
}

LineIntegral vertical_line_integral(const std::function<cplx(cplx)>& g, double sigma, double tol,
                                    bool conjugate_symmetric, double t_limit) {
  const auto& xk = GK15::abscissa();
  const auto& wk = GK15::weights();
  const auto& wg = G7::weights();
  struct Panel {
    cplx kron, gauss;
    double l1;
  };
  auto panel = [&](double t0) {
    Panel p{0.0, 0.0, 0.0};
    const double mid = t0 + 0.5, half = 0.5;
    for (std::size_t j = 0; j < xk.size(); ++j) {
      for (int sign : {-1, 1}) {
        if (j == 0 && sign == 1) continue;
        const cplx v = g(cplx(sigma, mid + sign * half * xk[j]));
        p.kron += half * wk[j] * v;
        p.l1 += half * wk[j] * std::abs(v);
        if (j % 2 == 0) p.gauss += half * wg[j / 2] * v;
      }
    }
    return p;
  };

  constexpr int kBatch = 8;
  LineIntegral out;
  cplx total = 0.0;
  double quad_err = 0.0, prev_mass = -1.0;
  const double norm = 1.0 / (2.0 * std::numbers::pi);
  const int per = conjugate_symmetric ? 1 : 2;
  const double fold = conjugate_symmetric ? 2.0 : 1.0;
  for (int start = 0;; start += kBatch) {
    // panels [k, k+1] and, unless symmetric, [-k-1, -k]
    std::vector<Panel> res(static_cast<std::size_t>(kBatch * per));
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < kBatch * per; ++idx) {
      const int k = start + idx / per;
      const bool neg = (idx % per) == 1;
      res[static_cast<std::size_t>(idx)] = panel(neg ? -k - 1.0 : static_cast<double>(k));
    }
    double mass = 0.0;
    for (const Panel& p : res) {
      total += conjugate_symmetric ? cplx(2.0 * p.kron.real(), 0.0) : p.kron;
      quad_err += fold * std::abs(p.kron - p.gauss);
      mass += fold * p.l1;
    }
    const double T = start + kBatch;
    // tail from the local power-law decay of the L1 mass of consecutive batches
    double tail = std::numeric_limits<double>::infinity();
    if (mass == 0.0) {
      tail = 0.0;
    } else if (prev_mass > 0.0 && mass < prev_mass) {
      const double centre = T - kBatch / 2.0;
      const double e_loc = std::min(40.0, std::log(prev_mass / mass) / std::log(centre / (centre - kBatch)));
      if (e_loc > 1.5) tail = norm * mass * (centre / kBatch) / (e_loc - 1.0);
    }
    prev_mass = mass;
    out.T = T;
    out.value = norm * total;
    out.error = norm * quad_err + tail;
    if (tail < tol && T >= 16) return out;
    if (T > t_limit) {
      out.converged = false;
      return out;
    }
  }
}

cplx laurent_coefficient(const std::function<cplx(cplx)>& h, cplx z0, double radius, int n, int m) {
  std::vector<cplx> vals(static_cast<std::size_t>(m));
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < m; ++k) {
    const cplx u = std::polar(radius, 2.0 * std::numbers::pi * (k + 0.5) / m);
    vals[static_cast<std::size_t>(k)] = h(z0 + u) * std::pow(u, -n);
  }
  cplx sum = 0.0;
  for (const auto& v : vals) sum += v;
  return sum / static_cast<double>(m);
}

}  // namespace hm
