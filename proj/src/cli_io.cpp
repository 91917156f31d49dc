#include "hm/cli_io.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <random>
#include <sstream>

#include "hm/dds.hpp"
#include "hm/moments.hpp"

namespace hm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

i64 or_default(i64 v, i64 d) { return v > 0 ? v : d; }
double or_default(double v, double d) { return v > 0 ? v : d; }

TestFunction test_function(const RunConfig& cfg) {
  if (cfg.shape == "bump") return TestFunction::bump(cfg.support_a, cfg.support_b);
  if (cfg.shape == "plateau") return TestFunction::plateau(cfg.support_a, cfg.support_b);
  throw UsageError("unknown shape: " + cfg.shape);
}

MainTermKernel parse_kernel(const std::string& k) {
  for (MainTermKernel m : {MainTermKernel::Residue, MainTermKernel::CubicPi, MainTermKernel::CubicPiHalf})
    if (k == main_term_kernel_name(m)) return m;
  throw UsageError("unknown kernel: " + k);
}

std::vector<Psi> parse_twists(const std::string& t) {
  if (t == "all") return {Psi::One, Psi::I, Psi::OnePlusI, Psi::IOnePlusI};
  try {
    const Psi p = psi_from_name(t);
    if (p == Psi::Two) throw UsageError("twist must be a member of CG");
    return {p};
  } catch (const DomainError&) {
    throw UsageError("unknown twist: " + t);
  }
}

std::vector<double> grid_of(const RunConfig& cfg, i64 x_default, int points_default) {
  if (!cfg.grid.empty()) return cfg.grid;
  const double x = static_cast<double>(or_default(cfg.x, x_default));
  const int n = cfg.points > 0 ? cfg.points : points_default;
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(std::ldexp(x, k));
  return g;
}

std::vector<double> running_theta(const std::vector<double>& xs, const std::vector<double>& res,
                                  const std::vector<double>& mains) {
  std::vector<double> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::vector<double> a(xs.begin(), xs.begin() + static_cast<long>(i) + 1);
    const std::vector<double> b(res.begin(), res.begin() + static_cast<long>(i) + 1);
    const std::vector<double> c(mains.begin(), mains.begin() + static_cast<long>(i) + 1);
    try {
      out.push_back(residual_exponent(a, b, c).theta);
    } catch (const DomainError&) {
      out.push_back(kNaN);
    }
  }
  return out;
}

int oracle_symbol(GaussianInt a, const Factorization& f) {
  int r = 1;
  for (const auto& pp : f.odd_part) {
    const int v = symbol_euler_oracle(a, pp.prime);
    for (int e = 0; e < pp.exponent; ++e) r *= v;
  }
  return r;
}

Report suite_verify_symbols(const RunConfig& cfg) {
  Report r{"verify-symbols", {"check", "cases", "mismatches"}, {}, {}, 0};
  const i64 limit = or_default(cfg.x, 400);
  const i64 side = static_cast<i64>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<GaussianInt> odd;
  for (i64 a = -side; a <= side; ++a)
    for (i64 b = -side; b <= side; ++b)
      if (((a ^ b) & 1) && a * a + b * b <= limit) odd.push_back({a, b});

  i64 cases = 0, bad = 0;
  std::vector<Factorization> fac;
  for (const auto& n : odd) fac.push_back(factorize(n));
  for (std::size_t j = 0; j < odd.size(); ++j)
    for (const auto& a : odd) {
      ++cases;
      if (symbol_fast(a, odd[j]) != oracle_symbol(a, fac[j])) ++bad;
    }
  r.rows.push_back({"exhaustive", format_integer(cases), format_integer(bad)});
  i64 total_bad = bad;

  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<i64> d(-100000, 100000);
  cases = bad = 0;
  while (cases < cfg.samples) {
    const GaussianInt a{d(rng), d(rng)}, n{d(rng), d(rng)};
    if (!is_odd(a) || !is_odd(n) || norm(n) > 10'000'000'000LL || norm(a) > 10'000'000'000LL) continue;
    ++cases;
    if (symbol_fast(a, n) != oracle_symbol(a, factorize(n))) ++bad;
  }
  r.rows.push_back({"random", format_integer(cases), format_integer(bad)});
  total_bad += bad;

  const auto prim = enumerate_primary(cfg.reciprocity_limit);
  i64 rc = 0, rb = 0, sc = 0, sb = 0;
  for (const auto& m : prim) {
    const GaussianInt v = m.value();
    const int si = ((1 - v.re) / 2) % 2 == 0 ? 1 : -1;
    const int s1 = ((v.re - v.im - 1 - v.im * v.im) / 4) % 2 == 0 ? 1 : -1;
    sc += 2;
    sb += (symbol_fast(kI, v) != si) + (symbol_fast(kOnePlusI, v) != s1);
    for (const auto& n : prim) {
      if (norm(gcd(v, n.value())) != 1) continue;
      ++rc;
      if (symbol_primary(v, n) != symbol_primary(n.value(), m)) ++rb;
    }
  }
  r.rows.push_back({"reciprocity", format_integer(rc), format_integer(rb)});
  r.rows.push_back({"supplementary", format_integer(sc), format_integer(sb)});
  total_bad += rb + sb;
  r.summary.push_back({"mismatches", format_integer(total_bad)});
  r.summary.push_back({"reciprocity_mismatches", format_integer(rb + sb)});
  r.status = total_bad == 0 ? 0 : 1;
  return r;
}

Report suite_gauss_sums(const RunConfig& cfg) {
  Report r{"gauss-sums", {"c_re", "c_im", "twist", "modulus_norm", "g_re", "g_im", "deviation"}, {}, {}, 0};
  const double tol = or_default(cfg.tolerance, 1e-9);
  double worst = 0;
  i64 count = 0;
  for (const Primary& c : squarefree_primaries(or_default(cfg.x, 300)))
    for (Psi j : parse_twists("all")) {
      const CharSpec spec = induced_primitive(c, j);
      if (spec.is_trivial()) continue;
      const cplx g = gauss_sum(spec);
      const double dev = std::abs(g - std::sqrt(static_cast<double>(spec.modulus_norm)));
      worst = std::max(worst, dev);
      ++count;
      r.rows.push_back({format_integer(c.value().re), format_integer(c.value().im), psi_name(j),
                        format_integer(spec.modulus_norm), format_number(g.real()), format_number(g.imag()),
                        format_number(dev)});
    }
  const cplx g2 = gauss_sum(CharSpec::custom(Primary{}, Psi::One, true, {2, 0}));
  const cplx gi = gauss_sum(induced_primitive(Primary{}, Psi::I));
  const double special = std::max(std::abs(g2 - 2.0), std::abs(gi - 4.0));
  r.rows.push_back({"1", "0", "psi_2", "4", format_number(g2.real()), format_number(g2.imag()),
                    format_number(std::abs(g2 - 2.0))});
  r.rows.push_back({"1", "0", psi_name(Psi::I), "16", format_number(gi.real()), format_number(gi.imag()),
                    format_number(std::abs(gi - 4.0))});
  r.summary.push_back({"specs", format_integer(count)});
  r.summary.push_back({"max_deviation", format_number(worst)});
  r.summary.push_back({"special_deviation", format_number(special)});
  r.status = worst < tol && special < 1e-12 ? 0 : 1;
  return r;
}

Report suite_lfunc(const RunConfig& cfg, LValueTable* table) {
  Report r{"lfunc",
           {"c_re", "c_im", "twist", "modulus_norm", "s_re", "s_im", "value_re", "value_im", "error", "fe_residual"},
           {},
           {},
           0};
  const double tol = or_default(cfg.tolerance, 1e-8);
  const cplx s(cfg.s_re, cfg.s_im);
  std::vector<CharSpec> specs;
  for (const Primary& c : squarefree_primaries(or_default(cfg.x, 100)))
    for (Psi j : parse_twists(cfg.twist)) {
      const CharSpec spec = induced_primitive(c, j);
      if (!spec.is_trivial()) specs.push_back(spec);
    }
  const auto L = l_values(specs, s, table);
  std::vector<double> fe(specs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < specs.size(); ++i) fe[i] = check_fe(specs[i], s);
  double worst = 0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    worst = std::max(worst, fe[i]);
    r.rows.push_back({format_integer(specs[i].c1.value().re), format_integer(specs[i].c1.value().im),
                      psi_name(specs[i].twist), format_integer(specs[i].modulus_norm), format_number(s.real()),
                      format_number(s.imag()), format_number(L[i].value.real()), format_number(L[i].value.imag()),
                      format_number(L[i].error), format_number(fe[i])});
  }
  r.summary.push_back({"specs", format_integer(static_cast<i64>(specs.size()))});
  r.summary.push_back({"max_fe_residual", format_number(worst)});
  r.status = worst < tol ? 0 : 1;
  return r;
}

Report suite_dds(const RunConfig& cfg, LValueTable* table) {
  Report r{"dds-check",
           {"s_re", "s_im", "w_re", "w_im", "psi", "psi_prime", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
            "rel_residual", "heuristic"},
           {},
           {},
           0};
  const double tol = or_default(cfg.tolerance, 1e-8);
  const std::vector<std::pair<cplx, cplx>> base{
      {0.6, 1.4}, {0.5, 1.3}, {cplx(0.55, 1.5), cplx(1.6, -0.5)}, {0.3, 0.9}};
  const auto cg = parse_twists("all");
  std::vector<FePoint> pts;
  for (const auto& [s, w] : base)
    for (Psi p : cg)
      for (Psi q : cg) {
        const bool flagged = !in_proven_region(s, w) || !in_proven_region(1.0 - s, s + w - 0.5);
        if (flagged && !cfg.heuristics) continue;
        pts.push_back({s, w, p, q});
      }
  double worst = 0, worst_h = 0;
  for (const FeRow& row : check_functional_equations(pts, or_default(cfg.x, 2000), table)) {
    double& w = row.heuristic ? worst_h : worst;
    w = std::max(w, row.rel_residual);
    r.rows.push_back({format_number(row.s.real()), format_number(row.s.imag()), format_number(row.w.real()),
                      format_number(row.w.imag()), psi_name(row.psi), psi_name(row.psi_prime),
                      format_number(row.lhs.real()), format_number(row.lhs.imag()), format_number(row.rhs.real()),
                      format_number(row.rhs.imag()), format_number(row.rel_residual), row.heuristic ? "1" : "0"});
  }
  r.summary.push_back({"points", format_integer(static_cast<i64>(r.rows.size()))});
  r.summary.push_back({"max_residual", format_number(worst)});
  r.summary.push_back({"max_residual_heuristic", format_number(worst_h)});
  r.status = worst < tol && worst_h < 1e-2 ? 0 : 1;
  return r;
}

const std::vector<std::string> kMomentColumns{"X", "Y", "empirical", "main", "residual", "theta_running",
                                              "heuristic_flags"};

Report suite_first_moment(const RunConfig& cfg, LValueTable* table) {
  Report r{"first-moment", kMomentColumns, {}, {}, 0};
  const TestFunction phi = test_function(cfg);
  const auto grid = grid_of(cfg, 1000, 7);
  if (grid.size() < 4) throw UsageError("first-moment needs at least four grid points");
  std::vector<i64> xs;
  for (double g : grid) xs.push_back(static_cast<i64>(std::llround(g)));
  const auto vals = first_moment_empirical(xs, phi, table);
  std::vector<double> x, y;
  for (const auto& v : vals) {
    x.push_back(static_cast<double>(v.X));
    y.push_back(v.value);
  }
  const FirstMomentMain m = first_moment_main(x, y, phi);
  std::vector<double> res, res_c;
  for (std::size_t i = 0; i < x.size(); ++i) {
    res.push_back(y[i] - m.main_fit[i]);
    res_c.push_back(y[i] - m.main_contour[i]);
  }
  const auto run_theta = running_theta(x, res, m.main_fit);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::string flags;
    if (vals[i].negative_values > 0) flags = "negative-central-values=" + format_integer(vals[i].negative_values);
    r.rows.push_back({format_number(x[i]), "", format_number(y[i]), format_number(m.main_fit[i]),
                      format_number(res[i]), format_number(run_theta[i]), flags});
  }
  const double tol = or_default(cfg.tolerance, 0.05);
  double theta = kNaN, theta_se = kNaN, theta_c = kNaN;
  try {
    const ExponentFit f = residual_exponent(x, res, m.main_fit);
    theta = f.theta;
    theta_se = f.stderr_theta;
    theta_c = residual_exponent(x, res_c, m.main_contour).theta;
  } catch (const DomainError&) {
  }
  r.summary = {{"fit_c1", format_number(m.fit.c1)},
               {"fit_c0", format_number(m.fit.c0)},
               {"contour_c1", format_number(m.contour_c1)},
               {"contour_c0", format_number(m.contour_c0)},
               {"rel_diff_c1", format_number(m.rel_diff_c1)},
               {"rel_diff_c0", format_number(m.rel_diff_c0)},
               {"theta", format_number(theta)},
               {"theta_stderr", format_number(theta_se)},
               {"theta_contour", format_number(theta_c)}};
  const bool ok = theta <= 0.8 && m.rel_diff_c1 <= tol && m.rel_diff_c0 <= tol && m.fit.c1 > 0;
  r.status = ok ? 0 : 1;
  return r;
}

Report suite_char_sum(const RunConfig& cfg) {
  Report r{"char-sum", kMomentColumns, {}, {}, 0};
  const TestFunction phi = test_function(cfg);
  const MainTermKernel kernel = parse_kernel(cfg.kernel);
  const auto xs = grid_of(cfg, 1000, 4);
  const double ratio = cfg.y > 0 ? static_cast<double>(cfg.y) / static_cast<double>(or_default(cfg.x, 1000)) : 1.0;
  std::vector<double> emp, mains, res;
  bool converged = true;
  for (double X : xs) {
    const double Y = X * ratio;
    const CharSumMain m = char_sum_main(X, Y, phi, phi, kernel);
    converged = converged && m.d.converged;
    emp.push_back(char_sum_empirical(X, Y, phi, phi));
    mains.push_back(m.value);
    res.push_back(emp.back() - m.value);
  }
  const auto run_theta = running_theta(xs, res, mains);
  double max_rel = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    max_rel = std::max(max_rel, std::abs(res[i] / mains[i]));
    r.rows.push_back({format_number(xs[i]), format_number(xs[i] * ratio), format_number(emp[i]),
                      format_number(mains[i]), format_number(res[i]), format_number(run_theta[i]),
                      converged ? "" : "quadrature-unconverged"});
  }
  double theta = kNaN, theta_se = kNaN;
  try {
    const ExponentFit f = residual_exponent(xs, res, mains);
    theta = f.theta;
    theta_se = f.stderr_theta;
  } catch (const DomainError&) {
  }
  r.summary = {{"kernel", main_term_kernel_name(kernel)},
               {"theta", format_number(theta)},
               {"theta_stderr", format_number(theta_se)},
               {"max_rel_deviation", format_number(max_rel)}};
  if (!converged)
    r.status = 3;
  else
    r.status = std::isnan(theta) || theta <= or_default(cfg.tolerance, 1.15) ? 0 : 1;
  return r;
}

Report suite_second_moment(const RunConfig& cfg, LValueTable* table) {
  Report r{"second-moment", {"X", "sum"}, {}, {}, 0};
  const auto tw = parse_twists(cfg.twist);
  const SecondMomentScan scan = second_moment_scan(or_default(cfg.x, 10000), tw.front(), table);
  for (const auto& row : scan.rows) r.rows.push_back({format_integer(row.X), format_number(row.sum)});
  r.summary.push_back({"exponent", format_number(scan.exponent)});
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

const std::string* Report::find(const std::string& key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return &v;
  return nullptr;
}

double Report::number(const std::string& key) const {
  const std::string* v = find(key);
  if (!v) return kNaN;
  try {
    return std::stod(*v);
  } catch (const std::exception&) {
    return kNaN;
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_integer(i64 v) { return std::to_string(v); }

std::string render_report(const Report& r, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["status"] = r.status;
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    nlohmann::ordered_json s = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.summary) s[k] = v;
    j["summary"] = s;
    return j.dump(1) + "\n";
  }
  if (format != "csv") throw UsageError("unknown format: " + format);
  std::ostringstream out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_escape(r.columns[i]);
  out << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
    out << "\n";
  }
  return out.str();
}

Report report_from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  Report r;
  r.suite = j.at("suite").get<std::string>();
  r.status = j.at("status").get<int>();
  r.columns = j.at("columns").get<std::vector<std::string>>();
  r.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
  for (const auto& [k, v] : j.at("summary").items()) r.summary.emplace_back(k, v.get<std::string>());
  return r;
}

void write_report(const Report& r, const std::string& format, const std::string& path) {
  const std::string text = render_report(r, format);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
}

bool parse_config(int argc, const char* const* argv, RunConfig& cfg, std::string* help) {
  CLI::App app{"Quadratic Hecke characters over Q(i): symbols, L-values, double Dirichlet series and moments"};
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
  app.allow_config_extras(false);
  app.add_option("command", cfg.command, "suite to run")->check(CLI::IsMember(command_names()));
  app.add_option("--x", cfg.x, "size parameter (norm limit or base X)")->check(CLI::PositiveNumber);
  app.add_option("--y", cfg.y, "second size parameter (char-sum: Y/X = y/x)")->check(CLI::PositiveNumber);
  std::vector<double> support;
  app.add_option("--support", support, "test-function support a,b")->delimiter(',')->expected(2);
  app.add_option("--shape", cfg.shape, "bump or plateau")->check(CLI::IsMember({"bump", "plateau"}));
  app.add_option("--tolerance", cfg.tolerance, "pass threshold (suite specific)")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "L-value cache directory");
  app.add_flag("--no-cache", cfg.no_cache, "recompute every L-value");
  app.add_option("--output", cfg.output, "report path (default stdout)");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--heuristics", cfg.heuristics, "include points outside the proven region");
  app.add_option("--points", cfg.points, "grid size (X = x 2^k)")->check(CLI::PositiveNumber);
  app.add_option("--grid", cfg.grid, "explicit X grid")->delimiter(',');
  app.add_option("--twist", cfg.twist, "1, i, 1+i, i(1+i) or all");
  app.add_option("--s-re", cfg.s_re, "real part of s (lfunc)");
  app.add_option("--s-im", cfg.s_im, "imaginary part of s (lfunc)");
  app.add_option("--kernel", cfg.kernel, "char-sum main-term kernel")
      ->check(CLI::IsMember({"residue", "cubic-pi", "cubic-pi-half"}));
  app.add_option("--samples", cfg.samples, "random symbol pairs")->check(CLI::NonNegativeNumber);
  app.add_option("--reciprocity-limit", cfg.reciprocity_limit, "norm bound for reciprocity checks")
      ->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    if (help) *help = app.help();
    return false;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (!support.empty()) {
    cfg.support_a = support[0];
    cfg.support_b = support[1];
  }
  validate(cfg);
  return true;
}

void validate(const RunConfig& cfg) {
  if (cfg.command.empty()) throw UsageError("missing command");
  if (std::find(command_names().begin(), command_names().end(), cfg.command) == command_names().end())
    throw UsageError("unknown command: " + cfg.command);
  if (!(cfg.support_a > 0 && cfg.support_a < cfg.support_b)) throw UsageError("support must satisfy 0 < a < b");
  if (cfg.jobs < 1) throw UsageError("jobs must be at least 1");
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
  for (double g : cfg.grid)
    if (!(g >= 1)) throw UsageError("grid values must be at least 1");
}

Report run_suite(const RunConfig& cfg, LValueTable* table) {
  validate(cfg);
  if (cfg.command == "verify-symbols") return suite_verify_symbols(cfg);
  if (cfg.command == "gauss-sums") return suite_gauss_sums(cfg);
  if (cfg.command == "lfunc") return suite_lfunc(cfg, table);
  if (cfg.command == "dds-check") return suite_dds(cfg, table);
  if (cfg.command == "first-moment") return suite_first_moment(cfg, table);
  if (cfg.command == "char-sum") return suite_char_sum(cfg);
  return suite_second_moment(cfg, table);
}

int run(const RunConfig& cfg) {
  omp_set_num_threads(cfg.jobs);
  std::unique_ptr<LValueTable> table;
  if (!cfg.no_cache) {
    std::filesystem::create_directories(cfg.cache_dir);
    table = std::make_unique<LValueTable>(LValueTable::default_file(cfg.cache_dir));
  }
  const Report r = run_suite(cfg, table.get());
  if (table) table->save();
  write_report(r, cfg.format, cfg.output);
  std::ostream& log = cfg.output.empty() ? std::cerr : std::cout;
  for (const auto& [k, v] : r.summary) log << r.suite << " " << k << " = " << v << "\n";
  return r.status;
}

int main_entry(int argc, const char* const* argv) {
  RunConfig cfg;
  try {
    std::string help;
    if (!parse_config(argc, argv, cfg, &help)) {
      std::cout << help;
      return 0;
    }
    return run(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hm
