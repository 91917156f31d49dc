// The double Dirichlet series Z(s, w; psi, psi') = zeta_2(2s+2w-1) sum_m sum_n (m/n) psi(n) psi'(m) N(m)^-w N(n)^-s
// over primary m, n, and A(s, w) = Z(s, w; 1, 1) / zeta_2(2s+2w-1).
#pragma once

#include <array>
#include <vector>

#include "hm/lfunc.hpp"

namespace hm {

struct ZPoint {
  cplx s, w;
  Psi psi = Psi::One, psi_prime = Psi::One;
  cplx value;
  i64 truncation_norm = 0;
  double est_error = 0.0;
  bool heuristic = false;
};

/// Group law on CG = {1, i, 1+i, i(1+i)}.
Psi psi_mul(Psi a, Psi b);
/// Norm of the modulus of psi: 1, 16, 32, 32.
i64 psi_modulus_norm(Psi p);
/// Coefficients of a Z-linear combination of characters of CG, indexed by Psi.
using PsiCombination = std::array<cplx, 4>;
PsiCombination psi_single(Psi p);
/// psi' * (sum_k c_k psi_k) expanded in the basis.
PsiCombination psi_scale(Psi p, const PsiCombination& c);

/// Truncated double sum over primary m, n with norms <= cutoff, times zeta_2(2s+2w-1).
ZPoint z_direct(cplx s, cplx w, Psi psi, Psi psi_prime, i64 cutoff);

/// zeta_2(2s+2w-1) sum over squarefree primary m0 of psi'(m0) L_2(s, chi_m0 psi) zeta_2(2w) / (N(m0)^w L_2(s+2w, chi_m0 psi)),
/// truncated at N(m0) <= m0_cutoff. The error is the oscillation of the partial sums over the last decade.
ZPoint z_lsum(cplx s, cplx w, Psi psi, Psi psi_prime, i64 m0_cutoff, LValueTable* table = nullptr);
/// Same with psi' replaced by a linear combination of characters.
ZPoint z_lsum(cplx s, cplx w, Psi psi, const PsiCombination& weights, i64 m0_cutoff, LValueTable* table = nullptr);
/// L_2(s, chi_m0 psi): the L-function with the Euler factor at (1+i) removed.
cplx l2_factor(Primary m0, Psi psi, cplx s);

/// True when (s, w) lies in the region of absolute convergence of the m0-sum.
bool in_proven_region(cplx s, cplx w);

struct AValue {
  cplx value;
  double est_error = 0.0;
  bool heuristic = false;
  bool near_zeta_zero = false;
};
AValue a_sw(cplx s, cplx w, i64 m0_cutoff, LValueTable* table = nullptr);

struct ResidueCheck {
  cplx s_fixed;
  Psi psi_prime;
  std::array<double, 3> h;
  std::array<cplx, 3> samples;  // h * Z(s_fixed, 1 + h; 1, psi')
  cplx extrapolated;
  cplx target;  // pi zeta_2(2 s_fixed)/8 when psi' = 1, else 0
  double order = 0.0;
  double deviation = 0.0;  // relative to |target| when nonzero, absolute otherwise
};
/// Residue of Z(s_fixed, w; 1, psi') at w = 1 by Richardson extrapolation, evaluated through
/// the symmetry Z(s, w; psi, psi') = Z(w, s; psi', psi).
ResidueCheck check_residues(cplx s_fixed, Psi psi_prime, i64 m0_cutoff, LValueTable* table = nullptr);

struct FePoint {
  cplx s, w;
  Psi psi, psi_prime;
};
struct FeRow {
  cplx s, w;
  Psi psi, psi_prime;
  cplx lhs, rhs;
  double rel_residual = 0.0;
  bool heuristic = false;
};
/// Z(1-s, s+w-1/2; psi, psi') against the right side of its functional equation
/// (single term for psi != 1, the three-term 2-adic combination for psi = 1).
std::vector<FeRow> check_functional_equations(const std::vector<FePoint>& points, i64 m0_cutoff,
                                              LValueTable* table = nullptr);

enum class ResidueForm {
  Quadratic,             // pi^{3-2s} 2^{-3-2s} G(1-s)G(2s-1)/(G(2-2s)G(s)) zeta_K(2s-1)
  Cubic,                 // the same with pi^{3-3s}
  CubicIntermediate,     // pi^s 2^{1-2s}/16 zeta_K(2-2s) G(1-s)/G(s)
  FromFunctionalEquation // three-term residue evaluated at u = 1 - s before any simplification
};
const char* residue_form_name(ResidueForm f);
/// Residue of Z(s, w) on the polar line w = 3/2 - s.
cplx residue_polar_line(cplx s, ResidueForm form = ResidueForm::Quadratic);

}  // namespace hm
