#include "hm/moments.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace hm {

namespace {

constexpr double kPi = std::numbers::pi;

cplx zeta2(cplx s) { return zeta_K(s, true); }

std::vector<Primary> primaries_in_support(double X, const TestFunction& f) {
  const i64 lo = static_cast<i64>(std::floor(f.a * X));
  const i64 hi = static_cast<i64>(std::ceil(f.b * X));
  return enumerate_primary_range(std::max<i64>(lo, 0), hi);
}

}  // namespace

std::vector<FirstMomentValue> first_moment_empirical(const std::vector<i64>& xs, const TestFunction& phi,
                                                     LValueTable* table) {
  if (xs.empty()) return {};
  i64 xmin = xs.front(), xmax = xs.front();
  for (i64 x : xs) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  const i64 lo = static_cast<i64>(std::floor(phi.a * static_cast<double>(xmin)));
  const i64 hi = static_cast<i64>(std::ceil(phi.b * static_cast<double>(xmax)));
  const auto ms = enumerate_primary_range(std::max<i64>(lo, 0), hi);

  std::map<std::pair<i64, i64>, std::size_t> index;
  std::vector<CharSpec> specs;
  std::vector<std::size_t> base(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const Primary m0 = mobius_and_squarefree(ms[i]).m0;
    const auto key = std::make_pair(m0.value().re, m0.value().im);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, specs.size()).first;
      specs.push_back(induced_primitive(m0, Psi::One));
    }
    base[i] = it->second;
  }
  const auto L = l_values(specs, 0.5, table);
  std::vector<double> central(ms.size()), err(ms.size());
  std::vector<char> square(ms.size());
  for (std::size_t i = 0; i < ms.size(); ++i) {
    square[i] = specs[base[i]].is_trivial();
    const double f = imprimitive_factor(ms[i], 0.5).real();
    central[i] = f * L[base[i]].value.real();
    err[i] = std::abs(f) * L[base[i]].error;
  }

  std::vector<FirstMomentValue> out;
  for (i64 X : xs) {
    FirstMomentValue v;
    v.X = X;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const double w = phi(static_cast<double>(ms[i].norm()) / static_cast<double>(X));
      if (w == 0.0) continue;
      v.value += w * central[i];
      v.error += w * err[i];
      ++v.terms;
      if (square[i]) ++v.square_terms;
      else if (central[i] < 0) ++v.negative_values;
    }
    out.push_back(v);
  }
  return out;
}

FirstMomentValue first_moment_empirical(i64 X, const TestFunction& phi, LValueTable* table) {
  return first_moment_empirical(std::vector<i64>{X}, phi, table).front();
}

LinearFit fit_xlogx(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw DomainError("fit_xlogx: need at least two points");
  // columns scaled to unit norm before forming the normal equations
  std::vector<double> u(n), v(n);
  double nu = 0, nv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = xs[i] * std::log(xs[i]);
    v[i] = xs[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  nu = std::sqrt(nu);
  nv = std::sqrt(nv);
  double suu = 0, suv = 0, svv = 0, suy = 0, svy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = u[i] / nu, b = v[i] / nv;
    suu += a * a;
    suv += a * b;
    svv += b * b;
    suy += a * ys[i];
    svy += b * ys[i];
  }
  const double det = suu * svv - suv * suv;
  if (!(std::abs(det) > 1e-14)) throw DomainError("fit_xlogx: rank deficient grid");
  LinearFit fit;
  fit.c1 = (svv * suy - suv * svy) / det / nu;
  fit.c0 = (suu * svy - suv * suy) / det / nv;
  for (std::size_t i = 0; i < n; ++i) fit.residuals.push_back(ys[i] - fit.c1 * u[i] - fit.c0 * v[i]);
  return fit;
}

FirstMomentPole first_moment_pole(ResidueForm form) {
  FirstMomentPole p;
  const auto z2 = [](cplx u) { return zeta2(u); };
  p.gamma2 = laurent_coefficient(z2, 1.0, 0.25, 0).real();
  p.polar_constant = laurent_coefficient([&](cplx t) { return residue_polar_line(0.5 - t, form); }, 0.0, 0.1, 0).real();
  const double z2_2 = zeta2(2.0).real();
  const double dz2_2 = laurent_coefficient(z2, 2.0, 0.25, 1).real();
  // (w-1)(s+w-3/2) Z(s,w) = F(s,w) near (1/2, 1); F(1/2,1) = pi^2/128 from the line w = 1,
  // d/dw F(1/2,w) at w = 1 combines the slopes of F along the two polar lines
  const double F = kPi * kPi / 128;
  const double dF = kPi / 8 * p.gamma2 + p.polar_constant;
  p.a2 = F / z2_2;
  p.a1 = dF / z2_2 - F * 2 * dz2_2 / (z2_2 * z2_2);
  return p;
}

FirstMomentMain first_moment_main(const std::vector<double>& xs, const std::vector<double>& empirical,
                                  const TestFunction& phi, ResidueForm form) {
  if (xs.size() < 4) throw DomainError("first_moment_main: need at least four grid points");
  FirstMomentMain out;
  out.fit = fit_xlogx(xs, empirical);
  const FirstMomentPole pole = first_moment_pole(form);
  const double m1 = mellin_transform(phi, 1.0).real();
  const double dm1 = mellin_transform_derivative(phi, 1.0, 1).real();
  out.contour_c1 = pole.a2 * m1;
  out.contour_c0 = pole.a1 * m1 + pole.a2 * dm1;
  out.rel_diff_c1 = std::abs(out.fit.c1 - out.contour_c1) / std::abs(out.contour_c1);
  out.rel_diff_c0 = std::abs(out.fit.c0 - out.contour_c0) / std::abs(out.contour_c0);
  for (double X : xs) {
    out.main_fit.push_back(X * (out.fit.c1 * std::log(X) + out.fit.c0));
    out.main_contour.push_back(X * (out.contour_c1 * std::log(X) + out.contour_c0));
  }
  return out;
}

SideWeights side_weights(double X, const TestFunction& f) {
  SideWeights sw;
  for (const Primary& p : primaries_in_support(X, f)) {
    const double w = f(static_cast<double>(p.norm()) / X);
    if (w == 0.0) continue;
    sw.elements.push_back(p);
    sw.weights.push_back(w);
  }
  return sw;
}

namespace {

i128 char_sum_row(const SideWeights& m, std::size_t i, const SideWeights& n) {
  i128 acc = 0;
  const GaussianInt mv = m.elements[i].value();
  const double wm = m.weights[i];
  for (std::size_t j = 0; j < n.elements.size(); ++j) {
    const int c = symbol_primary(mv, n.elements[j]);
    if (c == 0) continue;
    const i64 q = std::llround(wm * n.weights[j] * kCharSumScale);
    acc += c > 0 ? q : -q;
  }
  return acc;
}

}  // namespace

i128 char_sum_kernel_serial(const SideWeights& m, const SideWeights& n) {
  i128 acc = 0;
  for (std::size_t i = 0; i < m.elements.size(); ++i) acc += char_sum_row(m, i, n);
  return acc;
}

i128 char_sum_kernel_parallel(const SideWeights& m, const SideWeights& n) {
  std::vector<i128> rows(m.elements.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < m.elements.size(); ++i) rows[i] = char_sum_row(m, i, n);
  i128 acc = 0;
  for (const i128 r : rows) acc += r;
  return acc;
}

double fixed_to_double(i128 v) {
  const bool neg = v < 0;
  const unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  const double hi = static_cast<double>(static_cast<std::uint64_t>(u >> 64));
  const double lo = static_cast<double>(static_cast<std::uint64_t>(u));
  const double r = (hi * 0x1p64 + lo) / kCharSumScale;
  return neg ? -r : r;
}

double char_sum_empirical(double X, double Y, const TestFunction& phi, const TestFunction& psi) {
  return fixed_to_double(char_sum_kernel_parallel(side_weights(X, phi), side_weights(Y, psi)));
}

const char* main_term_kernel_name(MainTermKernel k) {
  switch (k) {
    case MainTermKernel::Residue: return "residue";
    case MainTermKernel::CubicPi: return "cubic-pi";
    case MainTermKernel::CubicPiHalf: return "cubic-pi-half";
  }
  return "?";
}

DIntegral d_alpha(double alpha, const TestFunction& phi, const TestFunction& psi, MainTermKernel kernel, double sigma,
                  double tol) {
  constexpr double kTmax = 1500.0;
  DIntegral d;
  const double p1 = mellin_transform(phi, 1.0).real(), ph = mellin_transform(phi, 0.5).real();
  const double q1 = mellin_transform(psi, 1.0).real(), qh = mellin_transform(psi, 0.5).real();
  d.boundary = (p1 * qh * std::sqrt(alpha) + q1 * ph * alpha) / 2;

  const MellinTable tp(phi, kTmax), tq(psi, kTmax);
  const ResidueForm form = kernel == MainTermKernel::Residue ? ResidueForm::Quadratic : ResidueForm::Cubic;
  const double scale = (kernel == MainTermKernel::CubicPiHalf ? 32.0 : 64.0) / (kPi * kPi);
  const double la = std::log(alpha);
  const auto r = vertical_line_integral(
      [&](cplx s) { return std::exp(s * la) * tp(1.5 - s) * tq(s) * residue_polar_line(s, form) * scale; }, sigma,
      tol, true, kTmax);
  d.integral = r.value.real();
  d.error = r.error;
  d.T = r.T;
  d.converged = r.converged;
  return d;
}

CharSumMain char_sum_main(double X, double Y, const TestFunction& phi, const TestFunction& psi,
                          MainTermKernel kernel) {
  CharSumMain m;
  m.d = d_alpha(Y / X, phi, psi, kernel);
  m.value = kPi * kPi / (48 * zeta_K(2.0).real()) * std::pow(X, 1.5) * (m.d.boundary + m.d.integral);
  return m;
}

ExponentFit residual_exponent(const std::vector<double>& xs, const std::vector<double>& residuals,
                              const std::vector<double>& mains) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double scale = i < mains.size() ? std::abs(mains[i]) : 0.0;
    if (std::abs(residuals[i]) <= 1e-9 * scale || residuals[i] == 0.0) continue;
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(std::abs(residuals[i])));
  }
  if (lx.size() < 4) throw DomainError("residual_exponent: fewer than four usable residuals");
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  ExponentFit f;
  f.theta = sxy / sxx;
  double rss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - my - f.theta * (lx[i] - mx);
    rss += e * e;
  }
  f.stderr_theta = lx.size() > 2 ? std::sqrt(rss / (n - 2) / sxx) : std::numeric_limits<double>::infinity();
  f.used = static_cast<int>(lx.size());
  return f;
}

}  // namespace hm
