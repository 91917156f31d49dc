// Primitive quadratic Hecke characters of trivial infinite type over Q(i).
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "hm/gaussian.hpp"
#include "hm/symbol.hpp"

namespace hm {

/// x -> (x/c1) * psi_2(x)^[include_psi2] * psi_twist(x) as a Dirichlet character
/// modulo `modulus`. Family members come from induced_primitive.
struct CharSpec {
  Primary c1;  // squarefree primary core (1 for none)
  Psi twist = Psi::One;
  bool include_psi2 = false;
  GaussianInt modulus{1, 0};
  i64 modulus_norm = 1;

  bool is_trivial() const { return modulus_norm == 1; }
  bool modulus_even() const { return modulus_norm % 2 == 0; }
  std::string describe() const;

  /// Arbitrary combination, e.g. psi_2 alone (c1 = 1, modulus 2) or (./c) modulo c.
  static CharSpec custom(Primary c1, Psi twist, bool include_psi2, GaussianInt modulus);

  friend bool operator==(const CharSpec& a, const CharSpec& b) {
    return a.c1 == b.c1 && a.twist == b.twist && a.include_psi2 == b.include_psi2 &&
           a.modulus == b.modulus;
  }
};

/// The primitive character inducing chi_c * psi_j. Only the squarefree part of c matters.
CharSpec induced_primitive(Primary c, Psi j);

/// chi(x); zero iff gcd(x, modulus) is not a unit.
int eval_char(const CharSpec& spec, GaussianInt x);
/// chi on a primary element.
int eval_char(const CharSpec& spec, Primary p);
/// chi on the ideal ((1+i)^k p).
int eval_char(const CharSpec& spec, const Ideal& a);

/// A complete residue system modulo q with exactly N(q) elements.
struct ResidueSystem {
  GaussianInt modulus;
  std::vector<GaussianInt> representatives;
};
ResidueSystem residues_mod(GaussianInt q);

/// Canonical key of the class of x modulo q: (Re, Im) of x * conj(q) reduced mod N(q).
std::pair<i64, i64> residue_key(GaussianInt x, GaussianInt q);

/// e~(x/q) = exp(2 pi i Im(x/q)).
std::complex<double> additive_char(GaussianInt x, GaussianInt q);

/// g(chi) = sum_{x mod q} chi(x) e~(x/q).
std::complex<double> gauss_sum(const CharSpec& spec);
std::complex<double> gauss_sum(const std::function<int(GaussianInt)>& chi, GaussianInt q);

/// Every squarefree primary c with N(c) <= limit, in (norm, re, im) order.
std::vector<Primary> squarefree_primaries(i64 limit);

}  // namespace hm
