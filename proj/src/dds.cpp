#include "hm/dds.hpp"

#include <cmath>
#include <numbers>

namespace hm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Psi kCG[4] = {Psi::One, Psi::I, Psi::OnePlusI, Psi::IOnePlusI};

int psi_index(Psi p) {
  if (p == Psi::Two) throw DomainError("psi_2 is not a member of CG");
  return static_cast<int>(p);
}

cplx zeta2(cplx s) { return zeta_K(s, true); }

cplx npow(i64 n, cplx e) { return std::exp(-e * std::log(static_cast<double>(n))); }

}  // namespace

Psi psi_mul(Psi a, Psi b) { return kCG[psi_index(a) ^ psi_index(b)]; }

i64 psi_modulus_norm(Psi p) {
  switch (p) {
    case Psi::One: return 1;
    case Psi::I: return 16;
    case Psi::OnePlusI:
    case Psi::IOnePlusI: return 32;
    default: throw DomainError("psi_2 is not a member of CG");
  }
}

PsiCombination psi_single(Psi p) {
  PsiCombination c{};
  c[static_cast<std::size_t>(psi_index(p))] = 1.0;
  return c;
}

PsiCombination psi_scale(Psi p, const PsiCombination& c) {
  PsiCombination out{};
  for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(psi_index(psi_mul(p, kCG[k])))] += c[static_cast<std::size_t>(k)];
  return out;
}

bool in_proven_region(cplx s, cplx w) { return w.real() > 1.0 && (s + w).real() > 1.5; }

ZPoint z_direct(cplx s, cplx w, Psi psi, Psi psi_prime, i64 cutoff) {
  if (s.real() < 2.0 || w.real() < 2.0) throw DomainError("z_direct: Re s and Re w must be at least 2");
  const auto prim = enumerate_primary(cutoff);
  std::vector<cplx> wn(prim.size()), wm(prim.size());
  for (std::size_t j = 0; j < prim.size(); ++j) {
    wn[j] = static_cast<double>(eval_psi(psi, prim[j])) * npow(prim[j].norm(), s);
    wm[j] = static_cast<double>(eval_psi(psi_prime, prim[j])) * npow(prim[j].norm(), w);
  }
  std::vector<cplx> rows(prim.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < prim.size(); ++i) {
    cplx inner = 0.0;
    const GaussianInt m = prim[i].value();
    for (std::size_t j = 0; j < prim.size(); ++j) {
      const int c = symbol_primary(m, prim[j]);
      if (c != 0) inner += static_cast<double>(c) * wn[j];
    }
    rows[i] = wm[i] * inner;
  }
  cplx sum = 0.0;
  for (const cplx& r : rows) sum += r;
  const cplx z2 = zeta2(2.0 * s + 2.0 * w - 1.0);
  const double C = static_cast<double>(cutoff), ss = s.real(), sw = w.real();
  const double tail = kPi / 8 *
                      (std::pow(C, 1 - ss) / (ss - 1) * std::abs(zeta2(sw)) +
                       std::pow(C, 1 - sw) / (sw - 1) * std::abs(zeta2(ss))) *
                      std::abs(z2);
  return {s, w, psi, psi_prime, z2 * sum, cutoff, tail, false};
}

cplx l2_factor(Primary m0, Psi psi, cplx s) {
  if (psi != Psi::One || primary_type(m0) != PrimaryType::Type1) return 1.0;
  const int c = eval_char(induced_primitive(m0, Psi::One), Ideal{1, Primary{}, 2});
  return 1.0 - static_cast<double>(c) * std::exp(-s * std::log(2.0));
}

ZPoint z_lsum(cplx s, cplx w, Psi psi, const PsiCombination& weights, i64 m0_cutoff, LValueTable* table) {
  const auto m0s = squarefree_primaries(m0_cutoff);
  std::vector<CharSpec> specs;
  specs.reserve(m0s.size());
  for (const Primary& m0 : m0s) specs.push_back(induced_primitive(m0, psi));
  const cplx s2 = s + 2.0 * w;
  const auto L = l_values_at(specs, {s, s2}, table);
  const cplx z2w = zeta2(2.0 * w);

  cplx sum = 0.0;
  double lerr = 0.0;
  std::vector<cplx> partial(m0s.size());
  for (std::size_t i = 0; i < m0s.size(); ++i) {
    cplx wt = 0.0;
    for (int k = 0; k < 4; ++k)
      if (weights[static_cast<std::size_t>(k)] != 0.0)
        wt += weights[static_cast<std::size_t>(k)] * static_cast<double>(eval_psi(kCG[k], m0s[i]));
    if (wt != 0.0) {
      const cplx num = l2_factor(m0s[i], psi, s) * L[i][0].value;
      const cplx den = l2_factor(m0s[i], psi, s2) * L[i][1].value;
      const cplx term = wt * npow(m0s[i].norm(), w) * z2w * num / den;
      sum += term;
      lerr += std::abs(term) * (L[i][0].error / std::max(std::abs(L[i][0].value), 1e-300) +
                                L[i][1].error / std::abs(L[i][1].value));
    }
    partial[i] = sum;
  }
  double osc = 0.0;
  for (std::size_t i = 0; i < m0s.size(); ++i)
    if (10 * m0s[i].norm() >= m0_cutoff) osc = std::max(osc, std::abs(partial[i] - sum));
  const cplx pre = zeta2(2.0 * s + 2.0 * w - 1.0);
  ZPoint out{s, w, psi, Psi::One, pre * sum, m0_cutoff, std::abs(pre) * (osc + lerr), !in_proven_region(s, w)};
  for (int k = 0; k < 4; ++k)
    if (weights == psi_single(kCG[k])) out.psi_prime = kCG[k];
  return out;
}

ZPoint z_lsum(cplx s, cplx w, Psi psi, Psi psi_prime, i64 m0_cutoff, LValueTable* table) {
  return z_lsum(s, w, psi, psi_single(psi_prime), m0_cutoff, table);
}

AValue a_sw(cplx s, cplx w, i64 m0_cutoff, LValueTable* table) {
  const ZPoint z = z_lsum(s, w, Psi::One, Psi::One, m0_cutoff, table);
  const cplx d = zeta2(2.0 * s + 2.0 * w - 1.0);
  return {z.value / d, z.est_error / std::abs(d), z.heuristic, std::abs(d) < 1e-6};
}

ResidueCheck check_residues(cplx s_fixed, Psi psi_prime, i64 m0_cutoff, LValueTable* table) {
  if (s_fixed.real() < 2.0) throw DomainError("check_residues: Re s_fixed must be at least 2");
  ResidueCheck r;
  r.s_fixed = s_fixed;
  r.psi_prime = psi_prime;
  r.h = {0.2, 0.1, 0.05};
  for (std::size_t k = 0; k < 3; ++k) {
    const double h = r.h[k];
    r.samples[k] = h * z_lsum(1.0 + h, s_fixed, psi_prime, Psi::One, m0_cutoff, table).value;
  }
  const auto& f = r.samples;
  r.extrapolated = (8.0 * f[2] - 6.0 * f[1] + f[0]) / 3.0;
  r.target = psi_prime == Psi::One ? kPi * zeta2(2.0 * s_fixed) / 8.0 : cplx(0.0);
  r.order = std::log2(std::abs(f[0] - f[1]) / std::abs(f[1] - f[2]));
  const double scale = std::abs(r.target) > 0 ? std::abs(r.target) : 1.0;
  r.deviation = std::abs(r.extrapolated - r.target) / scale;
  return r;
}

std::vector<FeRow> check_functional_equations(const std::vector<FePoint>& points, i64 m0_cutoff,
                                              LValueTable* table) {
  std::vector<FeRow> rows;
  for (const FePoint& p : points) {
    const cplx s = p.s, w = p.w;
    const cplx s1 = 1.0 - s, w1 = s + w - 0.5;
    const ZPoint lhs = z_lsum(s1, w1, p.psi, p.psi_prime, m0_cutoff, table);
    const cplx gam = std::exp((1.0 - 2.0 * s) * std::log(kPi) + log_gamma(s) - log_gamma(1.0 - s));
    ZPoint rhs;
    cplx factor;
    if (p.psi != Psi::One) {
      factor = gam * std::exp((s - 0.5) * std::log(static_cast<double>(psi_modulus_norm(p.psi))));
      rhs = z_lsum(s, w, p.psi, p.psi_prime, m0_cutoff, table);
    } else {
      const cplx a = (1.0 - std::pow(2.0, -(1.0 - s))) / (2.0 * (1.0 - std::pow(2.0, -s)));
      const cplx b = (1.0 + std::pow(2.0, -(1.0 - s))) / (2.0 * (1.0 + std::pow(2.0, -s)));
      const cplx c = std::pow(2.0, 2.0 * s - 1.0);
      // psi'(1 + psi_i)(1 +- psi_{1+i}) and psi'(1 - psi_i)
      const PsiCombination plus{1.0, 1.0, 1.0, 1.0}, minus{1.0, 1.0, -1.0, -1.0}, third{1.0, -1.0, 0.0, 0.0};
      PsiCombination comb{};
      for (std::size_t k = 0; k < 4; ++k) comb[k] = 0.5 * (a * plus[k] + b * minus[k] + c * third[k]);
      factor = gam;
      rhs = z_lsum(s, w, Psi::One, psi_scale(p.psi_prime, comb), m0_cutoff, table);
    }
    const cplx r = factor * rhs.value;
    const double scale = std::max(std::abs(lhs.value), std::abs(r));
    rows.push_back({s, w, p.psi, p.psi_prime, lhs.value, r, std::abs(lhs.value - r) / scale,
                    lhs.heuristic || rhs.heuristic});
  }
  return rows;
}

const char* residue_form_name(ResidueForm f) {
  switch (f) {
    case ResidueForm::Quadratic: return "quadratic";
    case ResidueForm::Cubic: return "cubic";
    case ResidueForm::CubicIntermediate: return "cubic-intermediate";
    case ResidueForm::FromFunctionalEquation: return "from-fe";
  }
  return "?";
}

cplx residue_polar_line(cplx s, ResidueForm form) {
  switch (form) {
    case ResidueForm::Quadratic:
    case ResidueForm::Cubic: {
      const cplx p = form == ResidueForm::Quadratic ? 3.0 - 2.0 * s : 3.0 - 3.0 * s;
      const cplx lg = log_gamma(1.0 - s) + log_gamma(2.0 * s - 1.0) - log_gamma(2.0 - 2.0 * s) - log_gamma(s);
      return std::exp(p * std::log(kPi) + (-3.0 - 2.0 * s) * std::log(2.0) + lg) * zeta_K(2.0 * s - 1.0);
    }
    case ResidueForm::CubicIntermediate:
      return std::exp(s * std::log(kPi) + (1.0 - 2.0 * s) * std::log(2.0) + log_gamma(1.0 - s) - log_gamma(s)) /
             16.0 * zeta_K(2.0 * (1.0 - s));
    case ResidueForm::FromFunctionalEquation: {
      const cplx u = 1.0 - s;
      const cplx a = (1.0 - std::pow(2.0, -(1.0 - u))) / (2.0 * (1.0 - std::pow(2.0, -u)));
      const cplx b = (1.0 + std::pow(2.0, -(1.0 - u))) / (2.0 * (1.0 + std::pow(2.0, -u)));
      const cplx c = std::pow(2.0, 2.0 * u - 1.0);
      const cplx gam = std::exp((1.0 - 2.0 * u) * std::log(kPi) + log_gamma(u) - log_gamma(1.0 - u));
      return 0.5 * gam * (a + b + c) * kPi * zeta2(2.0 * u) / 8.0;
    }
  }
  return 0.0;
}

}  // namespace hm
