#include "hm/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hm {

namespace {

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("GaussianInt addition overflow");
  return r;
}

i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("GaussianInt subtraction overflow");
  return r;
}

i64 narrow(i128 v) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
    throw ArithmeticOverflow("GaussianInt coordinate overflow");
  return static_cast<i64>(v);
}

i128 floor_div(i128 u, i128 d) {
  i128 q = u / d;
  if ((u % d != 0) && ((u < 0) != (d < 0))) --q;
  return q;
}

// nearest integer to u/d for d > 0, ties rounded up
i128 round_div(i128 u, i128 d) { return floor_div(2 * u + d, 2 * d); }

}  // namespace

GaussianInt operator+(GaussianInt a, GaussianInt b) {
  return {checked_add(a.re, b.re), checked_add(a.im, b.im)};
}

GaussianInt operator-(GaussianInt a, GaussianInt b) {
  return {checked_sub(a.re, b.re), checked_sub(a.im, b.im)};
}

GaussianInt operator-(GaussianInt a) { return GaussianInt{0, 0} - a; }

GaussianInt operator*(GaussianInt a, GaussianInt b) {
  const i128 re = static_cast<i128>(a.re) * b.re - static_cast<i128>(a.im) * b.im;
  const i128 im = static_cast<i128>(a.re) * b.im + static_cast<i128>(a.im) * b.re;
  return {narrow(re), narrow(im)};
}

std::ostream& operator<<(std::ostream& os, GaussianInt z) {
  os << z.re << (z.im < 0 ? "-" : "+") << (z.im < 0 ? -z.im : z.im) << "i";
  return os;
}

std::string to_string(GaussianInt z) {
  std::ostringstream os;
  os << z;
  return os.str();
}

i128 norm128(GaussianInt z) {
  return static_cast<i128>(z.re) * z.re + static_cast<i128>(z.im) * z.im;
}

i64 norm(GaussianInt z) {
  const i128 n = norm128(z);
  if (n > static_cast<i128>(INT64_MAX)) throw ArithmeticOverflow("norm exceeds 63 bits");
  return static_cast<i64>(n);
}

bool is_odd(GaussianInt z) {
  if (z.is_zero()) throw DomainError("is_odd: zero input");
  return ((z.re ^ z.im) & 1) != 0;
}

GaussianInt unit_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

GaussianInt mod_nearest(GaussianInt a, GaussianInt n) {
  if (n.is_zero()) throw DomainError("mod_nearest: zero modulus");
  const i128 nn = norm128(n);
  const i128 u = static_cast<i128>(a.re) * n.re + static_cast<i128>(a.im) * n.im;
  const i128 v = static_cast<i128>(a.im) * n.re - static_cast<i128>(a.re) * n.im;
  const i128 kr = round_div(u, nn);
  const i128 ki = round_div(v, nn);
  const i128 rr = static_cast<i128>(a.re) - (kr * n.re - ki * n.im);
  const i128 ri = static_cast<i128>(a.im) - (kr * n.im + ki * n.re);
  return {narrow(rr), narrow(ri)};
}

bool divides(GaussianInt d, GaussianInt a) {
  if (d.is_zero()) return a.is_zero();
  const i128 nn = norm128(d);
  const i128 u = static_cast<i128>(a.re) * d.re + static_cast<i128>(a.im) * d.im;
  const i128 v = static_cast<i128>(a.im) * d.re - static_cast<i128>(a.re) * d.im;
  return u % nn == 0 && v % nn == 0;
}

GaussianInt exact_div(GaussianInt a, GaussianInt n) {
  if (n.is_zero()) throw DomainError("exact_div: zero divisor");
  const i128 nn = norm128(n);
  const i128 u = static_cast<i128>(a.re) * n.re + static_cast<i128>(a.im) * n.im;
  const i128 v = static_cast<i128>(a.im) * n.re - static_cast<i128>(a.re) * n.im;
  if (u % nn != 0 || v % nn != 0) throw DomainError("exact_div: not divisible");
  return {narrow(u / nn), narrow(v / nn)};
}

// ---------------------------------------------------------------------------
// Primary elements

namespace {
inline int mod4(i64 x) { return static_cast<int>(((x % 4) + 4) % 4); }
}  // namespace

bool Primary::is_primary(GaussianInt z) {
  const int a = mod4(z.re), b = mod4(z.im);
  return (a == 1 && b == 0) || (a == 3 && b == 2);
}

Primary Primary::from_value(GaussianInt z) {
  if (!is_primary(z)) throw DomainError("not primary: " + to_string(z));
  return Primary(z);
}

PrimaryType Primary::type() const {
  return mod4(v_.re) == 1 ? PrimaryType::Type1 : PrimaryType::Type2;
}

PrimaryType primary_type(Primary p) { return p.type(); }

UnitPrimary primary_normalize(GaussianInt z) {
  if (z.is_zero() || !is_odd(z)) throw DomainError("primary_normalize: even or zero input");
  // z = i^k * p  <=>  p = z * i^{-k}
  GaussianInt p = z;
  for (int k = 0; k < 4; ++k) {
    if (Primary::is_primary(p)) return {unit_power(k), Primary::from_value(p), k};
    p = GaussianInt{p.im, -p.re};  // multiply by -i
  }
  throw DomainError("primary_normalize: no primary associate (unreachable)");
}

GaussianInt gcd(GaussianInt a, GaussianInt b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd: both arguments zero");
  while (!b.is_zero()) {
    GaussianInt r = mod_nearest(a, b);
    a = b;
    b = r;
  }
  if (is_odd(a)) return primary_normalize(a).primary.value();
  for (int k = 0; k < 4; ++k) {
    if (a.re > 0 && a.im >= 0) return a;
    a = GaussianInt{-a.im, a.re};
  }
  return a;
}

bool norm_order_less(GaussianInt a, GaussianInt b) {
  const i128 na = norm128(a), nb = norm128(b);
  if (na != nb) return na < nb;
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Primary> enumerate_primary_range(i64 lo, i64 hi) {
  std::vector<Primary> out;
  if (hi < 1 || hi <= lo) return out;
  if (lo < 0) lo = 0;
  const i64 r = static_cast<i64>(std::sqrt(static_cast<double>(hi))) + 1;
  for (i64 b = -r; b <= r; ++b) {
    const int bm = mod4(b);
    if (bm == 1 || bm == 3) continue;
    const int amod = bm == 0 ? 1 : 3;
    const i64 rest_hi = hi - b * b;
    if (rest_hi < 0) continue;
    i64 amax = static_cast<i64>(std::sqrt(static_cast<double>(rest_hi)));
    while (amax * amax > rest_hi) --amax;
    while ((amax + 1) * (amax + 1) <= rest_hi) ++amax;
    i64 a = -amax;
    a += ((amod - mod4(a)) + 4) % 4;
    for (; a <= amax; a += 4) {
      const i64 n = a * a + b * b;
      if (n > lo) out.push_back(Primary::from_value({a, b}));
    }
  }
  std::sort(out.begin(), out.end(), [](const Primary& x, const Primary& y) {
    return norm_order_less(x.value(), y.value());
  });
  return out;
}

std::vector<Primary> enumerate_primary(i64 limit) { return enumerate_primary_range(0, limit); }

void for_each_ideal(i64 lo, i64 hi, const std::function<void(const Ideal&)>& fn) {
  if (lo < 0) lo = 0;
  if (hi <= lo) return;
  const i64 block = std::max<i64>(1 << 15, 8 * static_cast<i64>(std::sqrt(static_cast<double>(hi))));
  std::vector<Ideal> buf;
  for (i64 L = lo; L < hi; L += block) {
    const i64 H = std::min(hi, L + block);
    buf.clear();
    for (int k = 0; (i64{1} << k) <= H; ++k) {
      const i64 pk = i64{1} << k;
      for (const Primary& p : enumerate_primary_range(L / pk, H / pk))
        buf.push_back(Ideal{k, p, p.norm() * pk});
    }
    std::sort(buf.begin(), buf.end(), [](const Ideal& x, const Ideal& y) {
      if (x.norm != y.norm) return x.norm < y.norm;
      if (x.k != y.k) return x.k < y.k;
      if (x.p.value().re != y.p.value().re) return x.p.value().re < y.p.value().re;
      return x.p.value().im < y.p.value().im;
    });
    for (const Ideal& id : buf) fn(id);
  }
}

std::vector<Ideal> enumerate_ideals(i64 limit) {
  std::vector<Ideal> out;
  for_each_ideal(0, limit, [&](const Ideal& id) { out.push_back(id); });
  return out;
}

// ---------------------------------------------------------------------------
// Rational factorization

namespace detail {

namespace {
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, m = 128, g = 1, r = 1, q = 1, ys = 0, x = 0;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}
}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<std::pair<u64, int>> out;
  if (n <= 1) return out;
  auto push = [&](u64 p) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.push_back({p, 1});
  };
  for (u64 p = 2; p <= 1000000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      push(p);
      n /= p;
    }
  }
  if (n > 1) {
    std::vector<u64> big;
    factor_rec(n, big);
    std::sort(big.begin(), big.end());
    for (u64 p : big) push(p);
  }
  return out;
}

u64 sqrt_minus_one_mod(u64 p) {
  if (p % 4 != 1) throw DomainError("sqrt_minus_one_mod: p must be 1 mod 4");
  for (u64 c = 2; c < p; ++c) {
    const u64 x = powmod(c, (p - 1) / 4, p);
    if (mulmod(x, x, p) == p - 1) return x;
  }
  throw DomainError("sqrt_minus_one_mod: not found");
}

}  // namespace detail

GaussianInt Factorization::reconstruct() const {
  GaussianInt z = unit;
  for (int k = 0; k < exponent_of_1pi; ++k) z = z * kOnePlusI;
  for (const auto& pp : odd_part)
    for (int k = 0; k < pp.exponent; ++k) z = z * pp.prime.value();
  return z;
}

Factorization factorize(GaussianInt z) {
  if (z.is_zero()) throw DomainError("factorize: zero input");
  const i64 n = norm(z);
  Factorization f;
  GaussianInt rem = z;
  for (auto [p, e] : detail::factor_u64(static_cast<std::uint64_t>(n))) {
    const i64 ip = static_cast<i64>(p);
    if (p == 2) {
      f.exponent_of_1pi = e;
      for (int k = 0; k < e; ++k) rem = exact_div(rem, kOnePlusI);
    } else if (p % 4 == 3) {
      const int mult = e / 2;
      for (int k = 0; k < mult; ++k) rem = exact_div(rem, GaussianInt{-ip, 0});
      f.odd_part.push_back({Primary::from_value({-ip, 0}), mult});
    } else {
      const i64 x = static_cast<i64>(detail::sqrt_minus_one_mod(p));
      const Primary p1 = Primary::from_value(gcd(GaussianInt{ip, 0}, GaussianInt{x, 1}));
      const Primary p2 = primary_normalize(p1.value().conj()).primary;
      int c1 = 0;
      while (c1 < e && divides(p1.value(), rem)) {
        rem = exact_div(rem, p1.value());
        ++c1;
      }
      const int c2 = e - c1;
      for (int k = 0; k < c2; ++k) rem = exact_div(rem, p2.value());
      if (c1 > 0) f.odd_part.push_back({p1, c1});
      if (c2 > 0) f.odd_part.push_back({p2, c2});
    }
  }
  if (norm(rem) != 1) throw DomainError("factorize: leftover non-unit (unreachable)");
  f.unit = rem;
  std::sort(f.odd_part.begin(), f.odd_part.end(), [](const PrimePower& a, const PrimePower& b) {
    return norm_order_less(a.prime.value(), b.prime.value());
  });
  return f;
}

MobiusSquarefree mobius_and_squarefree(Primary m) {
  const Factorization f = factorize(m.value());
  GaussianInt m0{1, 0}, m1{1, 0};
  bool squarefree = true;
  int count = 0;
  for (const auto& pp : f.odd_part) {
    if (pp.exponent % 2) m0 = m0 * pp.prime.value();
    for (int k = 0; k < pp.exponent / 2; ++k) m1 = m1 * pp.prime.value();
    if (pp.exponent > 1) squarefree = false;
    ++count;
  }
  const int mu = squarefree ? (count % 2 ? -1 : 1) : 0;
  return {mu, Primary::from_value(m0), Primary::from_value(m1)};
}

}  // namespace hm
