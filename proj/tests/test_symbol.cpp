#include <random>

#include "doctest.h"
#include "hm/symbol.hpp"

using namespace hm;

namespace {

Primary P(i64 re, i64 im) { return Primary::from_value({re, im}); }

int oracle(GaussianInt a, GaussianInt n) {
  int r = 1;
  for (const auto& pp : factorize(n).odd_part) {
    const int v = symbol_euler_oracle(a, pp.prime);
    for (int e = 0; e < pp.exponent; ++e) r *= v;
  }
  return r;
}

std::vector<GaussianInt> odd_disk(i64 limit) {
  std::vector<GaussianInt> out;
  for (i64 a = -30; a <= 30; ++a)
    for (i64 b = -30; b <= 30; ++b)
      if (((a ^ b) & 1) && a * a + b * b <= limit) out.push_back({a, b});
  return out;
}

}  // namespace

TEST_CASE("euler oracle examples") {
  CHECK(symbol_euler_oracle(kI, P(-1, -2)) == -1);
  CHECK(symbol_euler_oracle({-1, -2}, P(-1, -2)) == 0);
  CHECK(symbol_euler_oracle({-3, 0}, P(-1, -2)) == -1);
  CHECK_THROWS_AS(symbol_euler_oracle({2, 0}, P(-3, 4)), DomainError);
}

TEST_CASE("fast symbol examples") {
  CHECK(symbol_fast(kI, {3, 2}) == -1);
  CHECK(symbol_fast(kOnePlusI, {-3, 0}) == -1);
  CHECK(symbol_fast({-3, 0}, {-1, -2}) == -1);
  CHECK(symbol_fast({-1, -2}, {-3, 0}) == -1);
  CHECK(symbol_fast({5, 0}, {1, 0}) == 1);
  CHECK(symbol_fast({0, 0}, {3, 0}) == 0);
  CHECK_THROWS_AS(symbol_fast({3, 0}, {2, 0}), DomainError);
  CHECK_THROWS_AS(symbol_fast({3, 0}, {0, 0}), DomainError);
}

TEST_CASE("unit insensitivity of the denominator") {
  for (const auto& n : odd_disk(200))
    for (const auto& a : odd_disk(50))
      for (int k = 0; k < 4; ++k) REQUIRE(symbol_fast(a, unit_power(k) * n) == symbol_fast(a, n));
}

TEST_CASE("oracle equivalence on small norms") {
  const auto dens = odd_disk(400);
  std::vector<GaussianInt> nums;
  for (i64 a = -20; a <= 20; ++a)
    for (i64 b = -20; b <= 20; ++b)
      if (a * a + b * b <= 400) nums.push_back({a, b});
  for (const auto& n : dens)
    for (const auto& a : nums) REQUIRE(symbol_fast(a, n) == oracle(a, n));
}

TEST_CASE("oracle equivalence on random large pairs") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<i64> d(-70000, 70000);
  int done = 0;
  while (done < 3000) {
    GaussianInt a{d(rng), d(rng)}, n{d(rng), d(rng)};
    if (n.is_zero() || !is_odd(n) || norm(n) > 10000000000LL || norm(a) > 10000000000LL) continue;
    REQUIRE(symbol_fast(a, n) == oracle(a, n));
    ++done;
  }
}

TEST_CASE("reciprocity and supplementary laws") {
  const auto prim = enumerate_primary(1000);
  for (const auto& m : prim) {
    const GaussianInt v = m.value();
    const i64 a = v.re, b = v.im;
    const int si = ((1 - a) / 2) % 2 == 0 ? 1 : -1;
    const i64 e = (a - b - 1 - b * b);
    REQUIRE(e % 4 == 0);
    const int s1pi = (e / 4) % 2 == 0 ? 1 : -1;
    REQUIRE(symbol_fast(kI, v) == si);
    REQUIRE(supplement_i(m) == si);
    REQUIRE(symbol_fast(kOnePlusI, v) == s1pi);
    REQUIRE(supplement_1pi(m) == s1pi);
    for (const auto& n : prim) {
      if (norm(gcd(v, n.value())) != 1) continue;
      REQUIRE(symbol_fast(v, n.value()) == symbol_fast(n.value(), v));
    }
  }
}

TEST_CASE("numerator multiplicativity and periodicity") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<i64> d(-3000, 3000);
  for (int t = 0; t < 20000; ++t) {
    GaussianInt a{d(rng), d(rng)}, b{d(rng), d(rng)}, n{d(rng), d(rng)}, k{d(rng), d(rng)};
    if (n.is_zero() || !is_odd(n)) continue;
    REQUIRE(symbol_fast(a * b, n) == symbol_fast(a, n) * symbol_fast(b, n));
    REQUIRE(symbol_fast(a + n * k, n) == symbol_fast(a, n));
    if (!a.is_zero()) REQUIRE((symbol_fast(a, n) == 0) == (norm(gcd(a, n)) != 1));
  }
}

TEST_CASE("psi characters") {
  CHECK(eval_psi(Psi::I, GaussianInt{-3, 0}) == 1);
  CHECK(eval_psi(Psi::OnePlusI, GaussianInt{3, 2}) == -1);
  CHECK(eval_psi(Psi::Two, GaussianInt{-3, 0}) == 1);
  CHECK(eval_psi(Psi::Two, GaussianInt{0, 1}) == -1);
  CHECK(eval_psi(Psi::Two, GaussianInt{2, 3}) == -1);
  CHECK_THROWS_AS(eval_psi(Psi::I, GaussianInt{2, 0}), DomainError);
  for (const auto& x : enumerate_primary(10000)) {
    const GaussianInt v = x.value();
    REQUIRE(eval_psi(Psi::Two, v) == 1);
    REQUIRE(eval_psi(Psi::I, v) == symbol_fast(kI, v));
    REQUIRE(eval_psi(Psi::OnePlusI, v) == symbol_fast(kOnePlusI, v));
    REQUIRE(eval_psi(Psi::I, x) * eval_psi(Psi::IOnePlusI, x) == eval_psi(Psi::OnePlusI, x));
    for (Psi j : {Psi::One, Psi::I, Psi::OnePlusI, Psi::IOnePlusI}) {
      const int p = eval_psi(j, x);
      REQUIRE(p * p == 1);
    }
  }
}

TEST_CASE("chi_m") {
  const auto prim = enumerate_primary(200);
  for (const auto& x : odd_disk(300)) REQUIRE(chi_m(Primary{}, x) == 1);
  CHECK(chi_m(P(-1, -2), {3, 2}) == symbol_euler_oracle({-1, -2}, P(3, 2)));
  for (const auto& m : prim) {
    CHECK(chi_m(m, {2, 0}) == 0);
    CHECK(chi_m(m, {1, 1}) == 0);
  }
  CHECK(psi_from_name(psi_name(Psi::IOnePlusI)) == Psi::IOnePlusI);
}
