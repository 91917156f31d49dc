#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "hm/characters.hpp"

using namespace hm;

namespace {

Primary P(i64 re, i64 im) { return Primary::from_value({re, im}); }

constexpr Psi kTwists[] = {Psi::One, Psi::I, Psi::OnePlusI, Psi::IOnePlusI};

// x - q*floor(x/q + 1/2) componentwise, then deduplicated.
GaussianInt reduce_nearest(GaussianInt x, GaussianInt q) {
  const i64 n = norm(q);
  const GaussianInt p = x * q.conj();
  auto rnd = [n](i64 u) {
    const i64 num = 2 * u + n, den = 2 * n;
    return num >= 0 ? num / den : -((-num + den - 1) / den);
  };
  const GaussianInt k{rnd(p.re), rnd(p.im)};
  return x - q * k;
}

std::vector<Primary> random_primaries(std::mt19937_64& rng, int count, i64 bound) {
  std::uniform_int_distribution<i64> d(-bound, bound);
  std::vector<Primary> out;
  while (static_cast<int>(out.size()) < count) {
    GaussianInt z{d(rng), d(rng)};
    if (z.is_zero() || !is_odd(z)) continue;
    out.push_back(primary_normalize(z).primary);
  }
  return out;
}

}  // namespace

TEST_CASE("induced primitive moduli") {
  auto s = induced_primitive(P(-3, 0), Psi::One);
  CHECK(s.modulus == GaussianInt{-3, 0});
  CHECK(s.modulus_norm == 9);
  CHECK_FALSE(s.include_psi2);
  s = induced_primitive(P(-1, -2), Psi::One);
  CHECK(s.modulus == GaussianInt{-2, -4});
  CHECK(s.modulus_norm == 20);
  CHECK(s.include_psi2);
  s = induced_primitive(Primary{}, Psi::I);
  CHECK(s.modulus_norm == 16);
  s = induced_primitive(Primary{}, Psi::OnePlusI);
  CHECK(s.modulus_norm == 32);
  s = induced_primitive(Primary{}, Psi::One);
  CHECK(s.is_trivial());
  // only the squarefree part matters
  CHECK(induced_primitive(P(-3, 4), Psi::I) == induced_primitive(Primary{}, Psi::I));
  CHECK(induced_primitive(Primary::from_value(GaussianInt{-3, 0} * GaussianInt{-3, 4}), Psi::One) ==
        induced_primitive(P(-3, 0), Psi::One));
  CHECK_THROWS_AS(induced_primitive(Primary{}, Psi::Two), DomainError);
}

TEST_CASE("eval_char basic values") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<i64> d(-50, 50);
  for (const auto& c : squarefree_primaries(200))
    for (Psi j : kTwists) {
      const auto s = induced_primitive(c, j);
      for (int t = 0; t < 20; ++t) {
        const GaussianInt k{d(rng), d(rng)};
        REQUIRE(eval_char(s, kOne + s.modulus * k) == 1);
      }
      CHECK(eval_char(s, kOne) == 1);
      CHECK(eval_char(s, kI) == 1);  // trivial on units
      if (s.modulus_even()) CHECK(eval_char(s, kOnePlusI) == 0);
    }
}

TEST_CASE("eval_char agrees with chi_c psi_j on coprime primary arguments") {
  std::mt19937_64 rng(11);
  const auto cs = random_primaries(rng, 60, 40);
  const auto xs = random_primaries(rng, 1000, 3000);
  for (const auto& c : cs)
    for (Psi j : kTwists) {
      const auto s = induced_primitive(c, j);
      for (const auto& x : xs) {
        if (norm(gcd(x.value(), c.value())) != 1) continue;
        REQUIRE(eval_char(s, x.value()) == chi_m(c, x.value()) * eval_psi(j, x.value()));
        REQUIRE(eval_char(s, x) == eval_char(s, x.value()));
      }
    }
}

TEST_CASE("eval_char zero pattern, period and multiplicativity") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<i64> d(-400, 400);
  for (const auto& c : squarefree_primaries(150))
    for (Psi j : kTwists) {
      const auto s = induced_primitive(c, j);
      for (int t = 0; t < 100; ++t) {
        GaussianInt x{d(rng), d(rng)}, y{d(rng), d(rng)}, k{d(rng), d(rng)};
        if (x.is_zero()) continue;
        const int vx = eval_char(s, x);
        REQUIRE((vx == 0) == (norm(gcd(x, s.modulus)) != 1));
        REQUIRE(eval_char(s, x + s.modulus * k) == vx);
        REQUIRE(eval_char(s, x * y) == vx * eval_char(s, y));
      }
    }
}

TEST_CASE("eval_char on ideals") {
  const auto s = induced_primitive(P(-3, 0), Psi::One);
  for (const auto& a : enumerate_ideals(500)) {
    GaussianInt g = a.p.value();
    for (int e = 0; e < a.k; ++e) g = g * kOnePlusI;
    REQUIRE(eval_char(s, a) == eval_char(s, g));
  }
}

TEST_CASE("residue systems") {
  CHECK(residues_mod(kOnePlusI).representatives.size() == 2);
  CHECK(residues_mod({2, 0}).representatives.size() == 4);
  CHECK_THROWS_AS(residues_mod({0, 0}), DomainError);
  const std::vector<GaussianInt> qs{{2, 0}, {1, 1}, {-3, 0}, {-1, -2}, {-4, -4}, {6, 8}, {4, 0}, {5, 3}, {-2, -4}};
  for (const auto& q : qs) {
    const auto rs = residues_mod(q);
    REQUIRE(static_cast<i64>(rs.representatives.size()) == norm(q));
    std::set<std::pair<i64, i64>> keys;
    for (const auto& x : rs.representatives) keys.insert(residue_key(x, q));
    CHECK(static_cast<i64>(keys.size()) == norm(q));
    // brute-force dedup over the square [0, N)^2
    std::set<std::pair<i64, i64>> reduced, oracle_keys;
    const i64 n = norm(q);
    for (i64 a = 0; a < n; ++a)
      for (i64 b = 0; b < n; ++b) {
        const GaussianInt r = reduce_nearest({a, b}, q);
        reduced.insert({r.re, r.im});
        oracle_keys.insert(residue_key({a, b}, q));
      }
    CHECK(static_cast<i64>(reduced.size()) == n);
    CHECK(oracle_keys == keys);
  }
}

TEST_CASE("gauss sum point values") {
  const auto psi2 = CharSpec::custom(Primary{}, Psi::One, true, {2, 0});
  const auto g2 = gauss_sum(psi2);
  CHECK(std::abs(g2 - std::complex<double>(2, 0)) < 1e-12);
  const auto g4 = gauss_sum(induced_primitive(Primary{}, Psi::I));
  CHECK(std::abs(g4 - std::complex<double>(4, 0)) < 1e-12);
  const auto leg = CharSpec::custom(P(-1, -2), Psi::One, false, {-1, -2});
  const auto g5 = gauss_sum(leg);
  CHECK(std::abs(g5 + std::sqrt(5.0)) < 1e-12);
  // (i/c) N(c)^{1/2} for odd primary squarefree c, with the bare symbol modulo c
  for (const auto& c : squarefree_primaries(300)) {
    if (c.norm() == 1) continue;
    const auto g = gauss_sum(CharSpec::custom(c, Psi::One, false, c.value()));
    REQUIRE(std::abs(g - static_cast<double>(supplement_i(c)) * std::sqrt(static_cast<double>(c.norm()))) <
            1e-9);
  }
}

TEST_CASE("gauss sums of the family equal the square root of the modulus norm") {
  for (const auto& c : squarefree_primaries(120))
    for (Psi j : kTwists) {
      const auto s = induced_primitive(c, j);
      if (s.is_trivial()) continue;
      const auto g = gauss_sum(s);
      REQUIRE(std::abs(g - std::sqrt(static_cast<double>(s.modulus_norm))) < 1e-9);
    }
}

TEST_CASE("family characters are primitive") {
  for (const auto& c : squarefree_primaries(2000))
    for (Psi j : kTwists) {
      const auto s = induced_primitive(c, j);
      if (s.is_trivial() || s.modulus_norm > 2000) continue;
      const auto f = factorize(s.modulus);
      std::vector<GaussianInt> primes;
      if (f.exponent_of_1pi > 0) primes.push_back(kOnePlusI);
      for (const auto& pp : f.odd_part) primes.push_back(pp.prime.value());
      const auto reps = residues_mod(s.modulus).representatives;
      for (const auto& p : primes) {
        const GaussianInt qp = exact_div(s.modulus, p);
        bool witness = false;
        for (const auto& x : reps) {
          if (!divides(qp, x - kOne)) continue;
          if (eval_char(s, x) == -1) {
            witness = true;
            break;
          }
        }
        INFO(s.describe());
        REQUIRE(witness);
      }
    }
}
