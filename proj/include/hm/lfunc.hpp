// Hecke L-functions L(s, chi) for the quadratic family over Q(i).
#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "hm/characters.hpp"
#include "hm/special.hpp"

namespace hm {

struct LValue {
  cplx value;
  double error = 0.0;
  std::string method;
};

/// Shared, lazily grown list of all ideals up to a norm bound (read-only snapshots).
std::shared_ptr<const std::vector<Ideal>> ideals_up_to(i64 limit);

/// Dirichlet series over ideals in norm order. Requires Re s >= 1.2. The cutoff grows until
/// the tail bound (trivial bound for the trivial character, partial summation with the
/// observed partial-sum maximum otherwise) falls below tail_tol, up to max_cutoff.
LValue l_direct(const CharSpec& spec, cplx s, double tail_tol = 1e-12, i64 max_cutoff = 16'000'000);

struct AfeOptions {
  double lambda = 1.0;   // splitting point; the value is independent of it
  double cutoff_y = 40.0;  // keep terms with argument below cutoff_y + (pi/2)|Im s|
};

/// Approximate functional equation with the incomplete gamma kernel:
/// L(s) = sum chi(a) N(a)^{-s} G(s, lambda N(a)/A)/G(s)
///      + A^{1-2s}/G(s) sum chi(a) N(a)^{s-1} G(1-s, N(a)/(lambda A)),  A = sqrt(N(q))/pi.
/// Valid for any s when the character is primitive and nontrivial with root number 1.
LValue l_afe(const CharSpec& spec, cplx s, const AfeOptions& opt = {});
/// Several points in one pass over the ideals.
std::vector<LValue> l_afe_batch(const CharSpec& spec, const std::vector<cplx>& points, const AfeOptions& opt = {});

/// Persistent cache of L-values keyed by (c1, twist, psi2, s).
class LValueTable {
 public:
  using Key = std::tuple<i64, i64, int, int, double, double>;

  LValueTable() = default;
  /// Loads `file` if it exists; save() writes back to it.
  explicit LValueTable(std::filesystem::path file);

  std::optional<LValue> get(const CharSpec& spec, cplx s) const;
  void put(const CharSpec& spec, cplx s, const LValue& v);
  LValue get_or_compute(const CharSpec& spec, cplx s, const std::function<LValue()>& compute);
  std::size_t size() const;
  void save() const;
  void load();
  const std::filesystem::path& file() const { return file_; }

  static Key key(const CharSpec& spec, cplx s);
  static std::filesystem::path default_file(const std::filesystem::path& dir) { return dir / "lvalues.csv"; }

 private:
  std::filesystem::path file_;
  mutable std::shared_mutex mu_;
  std::map<Key, LValue> entries_;
};

/// L(s, chi) by the cheapest valid route: zeta_K for the trivial character, the direct
/// series for Re s >= 6, the approximate functional equation otherwise.
LValue l_value(const CharSpec& spec, cplx s, LValueTable* table = nullptr);
/// Values for many characters at one point; parallel, order preserving.
std::vector<LValue> l_values(const std::vector<CharSpec>& specs, cplx s, LValueTable* table = nullptr);
/// out[i][k] = L(points[k], specs[i]); one pass over the ideals per character.
std::vector<std::vector<LValue>> l_values_at(const std::vector<CharSpec>& specs, const std::vector<cplx>& points,
                                             LValueTable* table = nullptr);

/// L(s, chi_m) for primary m through the primitive character of the squarefree part and
/// Euler factor corrections at (1+i) and at primes dividing m1 but not m0.
LValue l_imprimitive(Primary m, cplx s, LValueTable* table = nullptr);
/// The correction factor alone: L(s, chi_m) = factor * L(s, primitive(m0)).
cplx imprimitive_factor(Primary m, cplx s);

/// |L(1-s) - N(q)^{(2s-1)/2} pi^{1-2s} G(s)/G(1-s) L(s)| with the two sides evaluated
/// at different splitting points, so agreement is not automatic.
double check_fe(const CharSpec& spec, cplx s);

struct SecondMomentRow {
  i64 X;
  double sum;  // sum over squarefree primary m, N(m) <= X, of |L(1/2, chi_m psi)|^2
};
struct SecondMomentScan {
  std::vector<SecondMomentRow> rows;
  double exponent = 0.0;  // least-squares slope of log sum against log X
};
SecondMomentScan second_moment_scan(i64 limit, Psi twist, LValueTable* table = nullptr, i64 x0 = 1000);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hm
