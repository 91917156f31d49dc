// Quadratic residue symbol (a/n) in Z[i] and the characters built from it.
#pragma once

#include "hm/gaussian.hpp"

namespace hm {

/// Members of the group CG plus the Dirichlet character psi_2 modulo 2.
enum class Psi { One, I, OnePlusI, IOnePlusI, Two };

const char* psi_name(Psi j);
Psi psi_from_name(const std::string& name);

/// Slow reference: Euler's criterion a^{(N(p)-1)/2} mod p, for a primary prime p.
int symbol_euler_oracle(GaussianInt a, Primary p);

/// (a/n) for odd n via reduction, (1+i)- and unit-stripping, and reciprocity.
/// The denominator is unit-insensitive: (a/u n) = (a/n).
int symbol_fast(GaussianInt a, GaussianInt n);

/// Same as symbol_fast with n already primary (skips normalization).
int symbol_primary(GaussianInt a, Primary n);

/// (i/n) and ((1+i)/n) for primary n from the supplementary laws.
int supplement_i(Primary n);
int supplement_1pi(Primary n);

/// chi_m(x) = (m/x), and 0 for even x.
int chi_m(Primary m, GaussianInt x);

/// psi_j(x) for odd x; psi_2(x) = -1 iff x = i mod 2.
int eval_psi(Psi j, GaussianInt x);
/// psi_j on a primary element (psi_2 is identically 1 there).
int eval_psi(Psi j, Primary x);

}  // namespace hm
