#include "hm/symbol.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace hm {

const char* psi_name(Psi j) {
  switch (j) {
    case Psi::One: return "1";
    case Psi::I: return "i";
    case Psi::OnePlusI: return "1+i";
    case Psi::IOnePlusI: return "i(1+i)";
    case Psi::Two: return "psi2";
  }
  return "?";
}

Psi psi_from_name(const std::string& name) {
  if (name == "1") return Psi::One;
  if (name == "i") return Psi::I;
  if (name == "1+i") return Psi::OnePlusI;
  if (name == "i(1+i)") return Psi::IOnePlusI;
  if (name == "psi2") return Psi::Two;
  throw DomainError("unknown character name: " + name);
}

namespace {

inline int mod4(i64 x) { return static_cast<int>(x & 3); }  // two's complement: x mod 4 in {0..3}
inline int mod8(i64 x) { return static_cast<int>(x & 7); }

inline int supp_i(i64 re) { return mod4(re) == 1 ? 1 : -1; }

inline int supp_1pi(i64 re, i64 im) {
  const int a = mod8(re), b = mod8(im);
  const int t = ((a - b - 1 - b * b) % 8 + 8) % 8;
  return t == 0 ? 1 : -1;
}

inline bool primary_residue(i64 re, i64 im) {
  const int a = mod4(re), b = mod4(im);
  return (a == 1 && b == 0) || (a == 3 && b == 2);
}

inline i64 floor_div64(i64 u, i64 d) {
  i64 q = u / d;
  if ((u % d != 0) && (u < 0)) --q;
  return q;
}

constexpr i64 kSmall = i64{1} << 30;

inline bool small(GaussianInt z) {
  return z.re < kSmall && z.re > -kSmall && z.im < kSmall && z.im > -kSmall;
}

// a mod n for small n (|coords| < 2^30) and small a.
inline GaussianInt reduce_small(GaussianInt a, GaussianInt n) {
  const i64 nn = n.re * n.re + n.im * n.im;
  const i64 u = a.re * n.re + a.im * n.im;
  const i64 v = a.im * n.re - a.re * n.im;
  const i64 kr = floor_div64(2 * u + nn, 2 * nn);
  const i64 ki = floor_div64(2 * v + nn, 2 * nn);
  return {a.re - (kr * n.re - ki * n.im), a.im - (kr * n.im + ki * n.re)};
}

int symbol_loop(GaussianInt a, GaussianInt n) {
  // n primary throughout
  int res = 1;
  // log2 N(a n) <= 2 (bw(|a|_1) + bw(|n|_1))
  auto l1 = [](GaussianInt z) {
    return static_cast<std::uint64_t>(z.re < 0 ? -z.re : z.re) +
           static_cast<std::uint64_t>(z.im < 0 ? -z.im : z.im);
  };
  const int bits = 2 * (std::bit_width(l1(a)) + std::bit_width(l1(n)));
  const int cap = 4 * bits + 16;
  for (int iter = 0; iter < cap; ++iter) {
    if (n.re == 1 && n.im == 0) return res;
    a = (small(a) && small(n)) ? reduce_small(a, n) : mod_nearest(a, n);
    if (a.re == 0 && a.im == 0) return 0;
    int t = 0;
    while (((a.re ^ a.im) & 1) == 0) {
      a = GaussianInt{(a.re + a.im) / 2, (a.im - a.re) / 2};
      ++t;
    }
    if (t & 1) res *= supp_1pi(n.re, n.im);
    int k = 0;
    while (!primary_residue(a.re, a.im)) {
      a = GaussianInt{a.im, -a.re};
      ++k;
    }
    if (k & 1) res *= supp_i(n.re);
    std::swap(a, n);
  }
  throw std::logic_error("symbol_fast: iteration cap exceeded");
}

}  // namespace

int supplement_i(Primary n) { return supp_i(n.value().re); }
int supplement_1pi(Primary n) { return supp_1pi(n.value().re, n.value().im); }

int symbol_primary(GaussianInt a, Primary n) {
  const int r = symbol_loop(a, n.value());
#ifdef HM_SYMBOL_DEBUG
  const bool coprime = a.is_zero() ? n.norm() == 1 : norm(gcd(a, n.value())) == 1;
  if ((r == 0) == coprime) throw std::logic_error("symbol_fast: gcd cross-check failed");
#endif
  return r;
}

int symbol_fast(GaussianInt a, GaussianInt n) {
  if (n.is_zero() || !is_odd(n)) throw DomainError("symbol_fast: denominator must be odd and nonzero");
  return symbol_primary(a, primary_normalize(n).primary);
}

int symbol_euler_oracle(GaussianInt a, Primary p) {
  const i64 np = p.norm();
  if (np % 2 == 0) throw DomainError("symbol_euler_oracle: even prime");
  // p is prime iff N(p) is a rational prime, or N(p) = q^2 with q = 3 mod 4
  const auto f = detail::factor_u64(static_cast<std::uint64_t>(np));
  const bool prime = (f.size() == 1 && f[0].second == 1) ||
                     (f.size() == 1 && f[0].second == 2 && f[0].first % 4 == 3);
  if (!prime) throw DomainError("symbol_euler_oracle: denominator is not prime");
  const GaussianInt P = p.value();
  GaussianInt base = mod_nearest(a, P);
  if (base.is_zero()) return 0;
  GaussianInt r{1, 0};
  for (i64 e = (np - 1) / 2; e > 0; e >>= 1) {
    if (e & 1) r = mod_nearest(r * base, P);
    base = mod_nearest(base * base, P);
  }
  if (mod_nearest(r - kOne, P).is_zero()) return 1;
  if (mod_nearest(r + kOne, P).is_zero()) return -1;
  throw DomainError("symbol_euler_oracle: power is not +-1 (denominator not prime)");
}

int chi_m(Primary m, GaussianInt x) {
  if (x.is_zero() || !is_odd(x)) return 0;
  return symbol_fast(m.value(), x);
}

int eval_psi(Psi j, Primary x) {
  const GaussianInt v = x.value();
  switch (j) {
    case Psi::One: return 1;
    case Psi::I: return supp_i(v.re);
    case Psi::OnePlusI: return supp_1pi(v.re, v.im);
    case Psi::IOnePlusI: return supp_i(v.re) * supp_1pi(v.re, v.im);
    case Psi::Two: return 1;
  }
  return 1;
}

int eval_psi(Psi j, GaussianInt x) {
  if (x.is_zero() || !is_odd(x)) throw DomainError("eval_psi: argument must be odd");
  if (j == Psi::Two) return (x.re & 1) ? 1 : -1;
  return eval_psi(j, primary_normalize(x).primary);
}

}  // namespace hm
