#include "hm/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hm {

namespace {
const GaussianInt kOnePlusIPow5{-4, -4};  // (1+i)^5
}

std::string CharSpec::describe() const {
  std::ostringstream os;
  os << "c1=" << c1.value() << " twist=" << psi_name(twist) << (include_psi2 ? " +psi2" : "")
     << " q=" << modulus << " N(q)=" << modulus_norm;
  return os.str();
}

CharSpec CharSpec::custom(Primary c1, Psi twist, bool include_psi2, GaussianInt modulus) {
  if (twist == Psi::Two) throw DomainError("CharSpec twist must lie in CG");
  CharSpec s;
  s.c1 = c1;
  s.twist = twist;
  s.include_psi2 = include_psi2;
  s.modulus = modulus;
  s.modulus_norm = norm(modulus);
  return s;
}

CharSpec induced_primitive(Primary c, Psi j) {
  if (j == Psi::Two) throw DomainError("induced_primitive: twist must lie in CG");
  const Primary c1 = c.norm() == 1 ? c : mobius_and_squarefree(c).m0;
  const bool type2 = c1.type() == PrimaryType::Type2;
  GaussianInt q;
  switch (j) {
    case Psi::One: q = type2 ? GaussianInt{2, 0} * c1.value() : c1.value(); break;
    case Psi::I: q = GaussianInt{4, 0} * c1.value(); break;
    default: q = kOnePlusIPow5 * c1.value(); break;
  }
  return CharSpec::custom(c1, j, type2, q);
}

int eval_char(const CharSpec& spec, GaussianInt x) {
  if (x.is_zero()) return spec.is_trivial() ? 1 : 0;
  const bool odd = ((x.re ^ x.im) & 1) != 0;
  if (!odd) {
    if (spec.modulus_even()) return 0;
    return symbol_primary(x, spec.c1);
  }
  int v = symbol_primary(x, spec.c1);
  if (v == 0) return 0;
  if (spec.include_psi2) v *= (x.re & 1) ? 1 : -1;
  if (spec.twist != Psi::One) v *= eval_psi(spec.twist, x);
  return v;
}

int eval_char(const CharSpec& spec, Primary p) {
  const int v = symbol_primary(p.value(), spec.c1);
  if (v == 0 || spec.twist == Psi::One) return v;
  return v * eval_psi(spec.twist, p);
}

int eval_char(const CharSpec& spec, const Ideal& a) {
  if (a.k == 0) return eval_char(spec, a.p);
  if (spec.modulus_even()) return 0;
  int chi1pi = symbol_primary(kOnePlusI, spec.c1);
  const int v = eval_char(spec, a.p);
  return (a.k & 1) ? v * chi1pi : v;
}

std::pair<i64, i64> residue_key(GaussianInt x, GaussianInt q) {
  const i128 nn = norm128(q);
  i128 u = (static_cast<i128>(x.re) * q.re + static_cast<i128>(x.im) * q.im) % nn;
  i128 v = (static_cast<i128>(x.im) * q.re - static_cast<i128>(x.re) * q.im) % nn;
  if (u < 0) u += nn;
  if (v < 0) v += nn;
  return {static_cast<i64>(u), static_cast<i64>(v)};
}

ResidueSystem residues_mod(GaussianInt q) {
  if (q.is_zero()) throw DomainError("residues_mod: zero modulus");
  // q = g q' with q' primitive in Z^2; {x + y i : 0 <= x < g N(q'), 0 <= y < g}
  const i64 g = std::gcd(q.re < 0 ? -q.re : q.re, q.im < 0 ? -q.im : q.im);
  const i64 nprime = norm(q) / (g * g);
  ResidueSystem rs;
  rs.modulus = q;
  rs.representatives.reserve(static_cast<std::size_t>(g * g * nprime));
  for (i64 y = 0; y < g; ++y)
    for (i64 x = 0; x < g * nprime; ++x) rs.representatives.push_back({x, y});
  return rs;
}

std::complex<double> additive_char(GaussianInt x, GaussianInt q) {
  // Im(x/q) = Im(x conj(q)) / N(q); exact reduction before the single transcendental call
  const i128 nn = norm128(q);
  i128 v = (static_cast<i128>(x.im) * q.re - static_cast<i128>(x.re) * q.im) % nn;
  if (v < 0) v += nn;
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(nn);
  return {std::cos(theta), std::sin(theta)};
}

std::complex<double> gauss_sum(const std::function<int(GaussianInt)>& chi, GaussianInt q) {
  const ResidueSystem rs = residues_mod(q);
  const auto& reps = rs.representatives;
  const std::size_t n = reps.size();
  constexpr std::size_t kChunk = 4096;
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<std::complex<double>> partial(nchunks);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::complex<double> acc = 0.0;
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      const int v = chi(reps[k]);
      if (v != 0) acc += static_cast<double>(v) * additive_char(reps[k], q);
    }
    partial[c] = acc;
  }
  std::complex<double> total = 0.0;
  for (const auto& p : partial) total += p;
  return total;
}

std::complex<double> gauss_sum(const CharSpec& spec) {
  return gauss_sum([&spec](GaussianInt x) { return eval_char(spec, x); }, spec.modulus);
}

std::vector<Primary> squarefree_primaries(i64 limit) {
  std::vector<Primary> out;
  for (const Primary& p : enumerate_primary(limit))
    if (p.norm() == 1 || mobius_and_squarefree(p).mu != 0) out.push_back(p);
  return out;
}

}  // namespace hm
