// Run configuration, suites behind the command-line front end, and report emission.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hm/lfunc.hpp"

namespace hm {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // verify-symbols, gauss-sums, lfunc, dds-check, first-moment, char-sum, second-moment
  i64 x = 0, y = 0;     // 0 selects the command default
  double support_a = 1.0, support_b = 2.0;
  std::string shape = "bump";
  double tolerance = 0.0;  // 0 selects the command default
  int jobs = 1;
  std::string cache_dir = ".lvcache";
  bool no_cache = false;
  std::string output;  // empty: stdout
  std::string format = "csv";
  bool heuristics = false;
  int points = 0;
  std::vector<double> grid;
  std::string twist = "1";
  double s_re = 0.5, s_im = 0.0;
  std::string kernel = "residue";
  i64 samples = 100000;
  i64 reciprocity_limit = 1000;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify-symbols", "gauss-sums",  "lfunc",        "dds-check",
                                              "first-moment",   "char-sum",    "second-moment"};
  return names;
}

/// Flags override values from --config (flat `key = value` file). Throws UsageError.
/// Returns false when only help was requested (text in *help).
bool parse_config(int argc, const char* const* argv, RunConfig& cfg, std::string* help = nullptr);
void validate(const RunConfig& cfg);

struct Report {
  std::string suite;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  int status = 0;  // 0 success, 1 criterion failure, 3 numerical non-convergence

  const std::string* find(const std::string& key) const;
  double number(const std::string& key) const;
};

std::string format_number(double v);  // %.17g, "nan"/"inf" spelled out
std::string format_integer(i64 v);

std::string render_report(const Report& r, const std::string& format);
Report report_from_json(const std::string& text);
void write_report(const Report& r, const std::string& format, const std::string& path);

/// Executes the suite named by cfg.command; table may be null (no cache).
Report run_suite(const RunConfig& cfg, LValueTable* table);

/// Full front end: threads, cache, suite, report file. Returns the exit code.
int run(const RunConfig& cfg);
int main_entry(int argc, const char* const* argv);

}  // namespace hm
