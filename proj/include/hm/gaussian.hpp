// Exact arithmetic in the Gaussian integers Z[i].
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hm {

using i64 = std::int64_t;
using i128 = __int128;

struct ArithmeticOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct GaussianInt {
  i64 re = 0;
  i64 im = 0;

  constexpr GaussianInt() = default;
  constexpr GaussianInt(i64 r, i64 i = 0) : re(r), im(i) {}

  constexpr bool is_zero() const { return re == 0 && im == 0; }
  constexpr GaussianInt conj() const { return {re, -im}; }

  friend constexpr bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

GaussianInt operator+(GaussianInt a, GaussianInt b);
GaussianInt operator-(GaussianInt a, GaussianInt b);
GaussianInt operator-(GaussianInt a);
GaussianInt operator*(GaussianInt a, GaussianInt b);
std::ostream& operator<<(std::ostream& os, GaussianInt z);
std::string to_string(GaussianInt z);

inline constexpr GaussianInt kOne{1, 0};
inline constexpr GaussianInt kI{0, 1};
inline constexpr GaussianInt kOnePlusI{1, 1};

/// Norm re^2 + im^2. Throws ArithmeticOverflow if it does not fit in 63 bits.
i64 norm(GaussianInt z);
/// Norm with a 128-bit result; never overflows for 64-bit coordinates.
i128 norm128(GaussianInt z);

/// True iff (z, 1+i) = 1, i.e. the norm is odd. Throws DomainError for z = 0.
bool is_odd(GaussianInt z);

/// i^k for k in {0,1,2,3} (any integer k is reduced mod 4).
GaussianInt unit_power(int k);

/// Remainder of a modulo n with nearest-integer rounding of a/n; N(r) <= N(n)/2.
GaussianInt mod_nearest(GaussianInt a, GaussianInt n);
/// Exact quotient a/n; throws DomainError if n does not divide a.
GaussianInt exact_div(GaussianInt a, GaussianInt n);
bool divides(GaussianInt d, GaussianInt a);

enum class PrimaryType { Type1, Type2 };

/// An element congruent to 1 mod (1+i)^3. Construct through primary_normalize
/// or Primary::from_value, both of which check the residue criterion.
class Primary {
 public:
  constexpr Primary() = default;
  static Primary from_value(GaussianInt z);
  static bool is_primary(GaussianInt z);

  constexpr GaussianInt value() const { return v_; }
  PrimaryType type() const;
  i64 norm() const { return hm::norm(v_); }

  friend constexpr bool operator==(const Primary&, const Primary&) = default;

 private:
  constexpr explicit Primary(GaussianInt v) : v_(v) {}
  GaussianInt v_{1, 0};
};

PrimaryType primary_type(Primary p);

/// z = unit * p with p primary. Throws DomainError for even or zero z.
struct UnitPrimary {
  GaussianInt unit;
  Primary primary;
  int unit_exponent;  // unit = i^unit_exponent
};
UnitPrimary primary_normalize(GaussianInt z);

/// gcd normalized to its primary associate when odd, otherwise to the
/// associate with re > 0 and im >= 0.
GaussianInt gcd(GaussianInt a, GaussianInt b);

/// Order used for every enumeration: (norm, re, im) lexicographic.
bool norm_order_less(GaussianInt a, GaussianInt b);

/// Every primary element with norm <= limit, sorted by (norm, re, im).
std::vector<Primary> enumerate_primary(i64 limit);
/// Primary elements with lo < norm <= hi, sorted by (norm, re, im).
std::vector<Primary> enumerate_primary_range(i64 lo, i64 hi);

/// A nonzero ideal ((1+i)^k p) with p primary.
struct Ideal {
  int k = 0;
  Primary p;
  i64 norm = 1;
};
/// All nonzero ideals of norm <= limit, sorted by (norm, k, re, im).
std::vector<Ideal> enumerate_ideals(i64 limit);
/// Streams ideals with lo < norm <= hi in sorted order, block by block, so
/// large ranges never materialize at once.
void for_each_ideal(i64 lo, i64 hi, const std::function<void(const Ideal&)>& fn);

struct PrimePower {
  Primary prime;
  int exponent;
};

struct Factorization {
  GaussianInt unit{1, 0};
  int exponent_of_1pi = 0;
  std::vector<PrimePower> odd_part;  // sorted by (norm, re, im)

  GaussianInt reconstruct() const;
};

Factorization factorize(GaussianInt z);

struct MobiusSquarefree {
  int mu;
  Primary m0;  // squarefree part
  Primary m1;  // m = m0 * m1^2
};
MobiusSquarefree mobius_and_squarefree(Primary m);

namespace detail {
/// Rational-integer factorization helpers, exposed for testing.
bool is_prime_u64(std::uint64_t n);
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n);
std::uint64_t sqrt_minus_one_mod(std::uint64_t p);
}  // namespace detail

}  // namespace hm
