#include "hm/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

namespace hm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;

std::mutex g_ideal_mu;
std::shared_ptr<const std::vector<Ideal>> g_ideals;
i64 g_ideal_limit = 0;

// 1/Gamma(s), zero at the poles
cplx rgamma(cplx s) {
  if (s.imag() == 0.0) {
    const double x = s.real();
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    return 1.0 / std::tgamma(x);
  }
  return std::exp(-log_gamma(s));
}

cplx power(double base_log, cplx e) { return std::exp(e * base_log); }

cplx upper_gamma_any(cplx a, double y) {
  if (a.imag() == 0.0) return upper_gamma(a.real(), y);
  return upper_gamma(a, y);
}

}  // namespace

std::shared_ptr<const std::vector<Ideal>> ideals_up_to(i64 limit) {
  std::lock_guard lock(g_ideal_mu);
  if (!g_ideals || g_ideal_limit < limit) {
    const i64 target = std::max(limit, 2 * g_ideal_limit);
    g_ideals = std::make_shared<const std::vector<Ideal>>(enumerate_ideals(target));
    g_ideal_limit = target;
  }
  return g_ideals;
}

LValue l_direct(const CharSpec& spec, cplx s, double tail_tol, i64 max_cutoff) {
  const double sigma = s.real();
  if (sigma < 1.2) throw DomainError("l_direct: Re s must be at least 1.2");
  cplx sum = 0.0;
  i64 partial = 0, peak = 1;
  i64 done = 0, cutoff = 1000;
  for (;;) {
    for_each_ideal(done, cutoff, [&](const Ideal& a) {
      const int c = eval_char(spec, a);
      if (c == 0) return;
      sum += static_cast<double>(c) * std::exp(-s * std::log(static_cast<double>(a.norm)));
      partial += c;
      peak = std::max(peak, partial < 0 ? -partial : partial);
    });
    done = cutoff;
    const double C = static_cast<double>(cutoff);
    double tail;
    cplx correction = 0.0;
    if (spec.is_trivial()) {
      // ideal count (pi/4) x + P(x) with |P(x)| <= 2.3 sqrt(x)
      correction = (kPi / 4) * std::exp((1.0 - s) * std::log(C)) / (s - 1.0);
      tail = 2.3 * std::pow(C, 0.5 - sigma) * (1.0 + std::abs(s) / (sigma - 0.5));
    } else {
      tail = 2.0 * static_cast<double>(peak) * std::abs(s) / sigma * std::pow(C, -sigma);
    }
    const double rounding = 8 * kEps * std::abs(sum);
    if (tail <= tail_tol || cutoff >= max_cutoff)
      return {sum + correction, tail + rounding, "direct"};
    double needed;
    if (spec.is_trivial())
      needed = std::pow(tail_tol / (2.3 * (1.0 + std::abs(s) / (sigma - 0.5))), 1.0 / (0.5 - sigma));
    else
      needed = std::pow(2.0 * static_cast<double>(peak) * std::abs(s) / (sigma * tail_tol), 1.0 / sigma);
    const double next = std::max(2.0 * C, 1.1 * needed);
    cutoff = next >= static_cast<double>(max_cutoff) ? max_cutoff : static_cast<i64>(next);
  }
}

std::vector<LValue> l_afe_batch(const CharSpec& spec, const std::vector<cplx>& points, const AfeOptions& opt) {
  if (spec.is_trivial()) throw DomainError("l_afe: the trivial character has poles");
  const double lambda = opt.lambda;
  const double A = std::sqrt(static_cast<double>(spec.modulus_norm)) / kPi;
  const double logA = std::log(A);

  // distinct incomplete gamma parameters: (a, which argument)
  struct GammaSlot {
    cplx a;
    bool second;  // argument N/(lambda A) instead of lambda N/A
    double Y;
  };
  std::vector<GammaSlot> slots;
  // with lambda = 1 both sums share the argument N/A
  const bool split = lambda != 1.0;
  auto slot_of = [&](cplx a, bool second, double Y) {
    second = second && split;
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (slots[i].a == a && slots[i].second == second) {
        slots[i].Y = std::max(slots[i].Y, Y);
        return i;
      }
    slots.push_back({a, second, Y});
    return slots.size() - 1;
  };
  struct Point {
    cplx s, rg, dual;  // rg = 1/Gamma(s), dual = A^{1-2s}/Gamma(s)
    std::size_t first, second;
    double Y;
  };
  std::vector<Point> pts;
  double nmax = 0.0;
  for (const cplx s : points) {
    Point p;
    p.s = s;
    p.Y = opt.cutoff_y + kPi / 2 * std::abs(s.imag());
    p.rg = rgamma(s);
    p.dual = p.rg * power(logA, 1.0 - 2.0 * s);
    p.first = slot_of(s, false, p.Y);
    p.second = slot_of(1.0 - s, true, p.Y);
    pts.push_back(p);
    nmax = std::max(nmax, p.Y * A * std::max(lambda, 1.0 / lambda));
  }

  const auto ideals = ideals_up_to(static_cast<i64>(nmax) + 1);
  std::vector<cplx> sum(pts.size(), 0.0);
  std::vector<double> mag(pts.size(), 0.0);
  std::vector<cplx> g(slots.size());
  for (const Ideal& a : *ideals) {
    const double N = static_cast<double>(a.norm);
    if (N > nmax) break;
    const int c = eval_char(spec, a);
    if (c == 0) continue;
    const double logN = std::log(N);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const double y = slots[i].second ? N / (lambda * A) : lambda * N / A;
      g[i] = y > slots[i].Y ? cplx(0.0) : upper_gamma_any(slots[i].a, y);
    }
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Point& p = pts[k];
      const cplx t1 = power(logN, -p.s) * g[p.first] * p.rg;
      const cplx t2 = power(logN, p.s - 1.0) * g[p.second] * p.dual;
      const cplx t = static_cast<double>(c) * (t1 + t2);
      sum[k] += t;
      mag[k] += std::abs(t1) + std::abs(t2);
    }
  }

  std::vector<LValue> out;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Point& p = pts[k];
    const double sigma = p.s.real();
    const double NY = p.Y * A;
    const double edge = std::pow(p.Y, std::abs(sigma) + 1.0) * std::exp(-p.Y);
    const double trunc = kPi / 4 * A * std::max(lambda, 1.0 / lambda) * edge *
                         (std::abs(p.rg) * std::pow(NY, -sigma) + std::abs(p.dual) * std::pow(NY, sigma - 1.0));
    out.push_back({sum[k], 16 * kEps * mag[k] + trunc, "afe"});
  }
  return out;
}

LValue l_afe(const CharSpec& spec, cplx s, const AfeOptions& opt) { return l_afe_batch(spec, {s}, opt).front(); }

LValueTable::LValueTable(std::filesystem::path file) : file_(std::move(file)) { load(); }

LValueTable::Key LValueTable::key(const CharSpec& spec, cplx s) {
  return {spec.c1.value().re, spec.c1.value().im, static_cast<int>(spec.twist), spec.include_psi2 ? 1 : 0,
          s.real(), s.imag()};
}

std::optional<LValue> LValueTable::get(const CharSpec& spec, cplx s) const {
  std::shared_lock lock(mu_);
  const auto it = entries_.find(key(spec, s));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void LValueTable::put(const CharSpec& spec, cplx s, const LValue& v) {
  std::unique_lock lock(mu_);
  entries_.insert_or_assign(key(spec, s), v);
}

LValue LValueTable::get_or_compute(const CharSpec& spec, cplx s, const std::function<LValue()>& compute) {
  if (auto hit = get(spec, s)) return *hit;
  const LValue v = compute();
  std::unique_lock lock(mu_);
  return entries_.emplace(key(spec, s), v).first->second;
}

std::size_t LValueTable::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

void LValueTable::save() const {
  if (file_.empty()) return;
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  const auto tmp = std::filesystem::path(file_.string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write cache file " + tmp.string());
    os << "LVCACHE v1\n";
    std::shared_lock lock(mu_);
    char buf[512];
    for (const auto& [k, v] : entries_) {
      const auto& [re, im, tw, p2, sr, si] = k;
      std::snprintf(buf, sizeof buf, "%lld,%lld,%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", static_cast<long long>(re),
                    static_cast<long long>(im), tw, p2, sr, si, v.value.real(), v.value.imag(), v.error,
                    v.method.c_str());
      os << buf;
    }
  }
  std::filesystem::rename(tmp, file_);
}

void LValueTable::load() {
  if (file_.empty() || !std::filesystem::exists(file_)) return;
  std::ifstream is(file_);
  std::string line;
  if (!std::getline(is, line) || line != "LVCACHE v1") return;
  std::unique_lock lock(mu_);
  while (std::getline(is, line)) {
    long long re, im;
    int tw, p2;
    double sr, si, vr, vi, err;
    char method[64] = {0};
    if (std::sscanf(line.c_str(), "%lld,%lld,%d,%d,%lf,%lf,%lf,%lf,%lf,%63s", &re, &im, &tw, &p2, &sr, &si, &vr, &vi,
                    &err, method) != 10)
      continue;
    entries_.insert_or_assign(Key{re, im, tw, p2, sr, si}, LValue{cplx(vr, vi), err, method});
  }
}

LValue l_value(const CharSpec& spec, cplx s, LValueTable* table) {
  auto compute = [&]() -> LValue {
    if (spec.is_trivial()) {
      const Estimate e = zeta_K_est(s);
      return {e.value, e.error, "zetaK"};
    }
    if (s.real() >= 6.0) return l_direct(spec, s, 1e-15);
    return l_afe(spec, s);
  };
  return table ? table->get_or_compute(spec, s, compute) : compute();
}

std::vector<LValue> l_values(const std::vector<CharSpec>& specs, cplx s, LValueTable* table) {
  const auto grid = l_values_at(specs, {s}, table);
  std::vector<LValue> out;
  out.reserve(grid.size());
  for (const auto& row : grid) out.push_back(row.front());
  return out;
}

std::vector<std::vector<LValue>> l_values_at(const std::vector<CharSpec>& specs, const std::vector<cplx>& points,
                                             LValueTable* table) {
  std::vector<std::vector<LValue>> out(specs.size(), std::vector<LValue>(points.size()));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const CharSpec& spec = specs[i];
    std::vector<cplx> missing;
    std::vector<std::size_t> where;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const cplx s = points[k];
      if (table)
        if (auto hit = table->get(spec, s)) {
          out[i][k] = *hit;
          continue;
        }
      if (spec.is_trivial() || s.real() >= 6.0) {
        out[i][k] = l_value(spec, s, table);
      } else {
        missing.push_back(s);
        where.push_back(k);
      }
    }
    if (missing.empty()) continue;
    const auto vals = l_afe_batch(spec, missing);
    for (std::size_t j = 0; j < vals.size(); ++j) {
      out[i][where[j]] = table ? table->get_or_compute(spec, missing[j], [&] { return vals[j]; }) : vals[j];
    }
  }
  return out;
}

cplx imprimitive_factor(Primary m, cplx s) {
  const auto ms = mobius_and_squarefree(m);
  const CharSpec spec = induced_primitive(ms.m0, Psi::One);
  cplx f = 1.0;
  if (primary_type(ms.m0) == PrimaryType::Type1) {
    const int c = eval_char(spec, Ideal{1, Primary{}, 2});
    f *= 1.0 - static_cast<double>(c) * std::exp(-s * std::log(2.0));
  }
  if (ms.m1.norm() > 1) {
    for (const auto& pp : factorize(ms.m1.value()).odd_part) {
      const int c = eval_char(spec, pp.prime);
      if (c == 0) continue;
      f *= 1.0 - static_cast<double>(c) * std::exp(-s * std::log(static_cast<double>(pp.prime.norm())));
    }
  }
  return f;
}

LValue l_imprimitive(Primary m, cplx s, LValueTable* table) {
  const auto ms = mobius_and_squarefree(m);
  const LValue base = l_value(induced_primitive(ms.m0, Psi::One), s, table);
  const cplx f = imprimitive_factor(m, s);
  return {base.value * f, base.error * std::abs(f), base.method};
}

double check_fe(const CharSpec& spec, cplx s) {
  AfeOptions left, right;
  right.lambda = 1.3;
  const auto lhs = l_afe(spec, 1.0 - s, left);
  const auto rhs = l_afe(spec, s, right);
  const cplx factor = std::exp((s - 0.5) * std::log(static_cast<double>(spec.modulus_norm)) +
                               (1.0 - 2.0 * s) * std::log(kPi) + log_gamma(s) - log_gamma(1.0 - s));
  return std::abs(lhs.value - factor * rhs.value);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw DomainError("loglog_slope: need at least two points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

SecondMomentScan second_moment_scan(i64 limit, Psi twist, LValueTable* table, i64 x0) {
  if (limit > 100000) throw DomainError("second_moment_scan: limit above 1e5");
  if (twist == Psi::Two) throw DomainError("second_moment_scan: twist must lie in CG");
  const auto cs = squarefree_primaries(limit);
  std::vector<CharSpec> specs;
  specs.reserve(cs.size());
  for (const Primary& c : cs) specs.push_back(induced_primitive(c, twist));
  const auto vals = l_values(specs, 0.5, table);

  std::vector<i64> grid;
  for (double X = static_cast<double>(x0); X < static_cast<double>(limit) * 1.0001; X *= std::sqrt(10.0))
    grid.push_back(static_cast<i64>(std::llround(X)));
  if (grid.empty() || grid.back() != limit) grid.push_back(limit);

  SecondMomentScan out;
  double acc = 0.0;
  std::size_t j = 0;
  for (const i64 X : grid) {
    for (; j < cs.size() && cs[j].norm() <= X; ++j) acc += std::norm(vals[j].value);
    out.rows.push_back({X, acc});
  }
  std::vector<double> xs, ys;
  for (const auto& r : out.rows)
    if (r.sum > 0) {
      xs.push_back(static_cast<double>(r.X));
      ys.push_back(r.sum);
    }
  out.exponent = xs.size() >= 2 ? loglog_slope(xs, ys) : 0.0;
  return out;
}

}  // namespace hm
