#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "walshdecay/corpus.hpp"

namespace walshdecay {

struct CorpusSelection {
  std::string name;
  std::map<std::string, double> params;
};

/// Which bound to evaluate. Tags: lemma3 (monomial), lemma4 (variation),
/// theorem1 (power series), theorem2 (C^r), theorem3 (Sobolev),
/// theorem4 (periodic Sobolev).
struct TheoremSelection {
  std::string tag;
  int r = 3;
  double lambda = 1.0;
};

struct LowerBoundConfig {
  std::string function = "exp";
  std::map<std::string, double> params = {{"a", 1.0}};
  int kappa1 = 1;
  std::vector<std::uint64_t> kprime = {0, 1, 2};
  int a_min = 2;
  int a_max = 14;
  int s_max = 1;
  int gap = 5;  // position spacing for the nested (s >= 2) ladders
};

struct RunConfig {
  int base = 2;
  int max_level = 10;
  std::vector<CorpusSelection> corpus;
  std::vector<TheoremSelection> theorems;
  double tol = 1e-12;      // recursion/series truncation tolerance
  double tol_rel = 1e-9;   // relative violation tolerance
  int quad_order = 8;
  int min_level = 4;
  std::string out_dir = ".";
  int jobs = 1;
  LowerBoundConfig lower_bound;
  std::vector<int> bench_levels;  // levels of the configured base; empty = defaults
};

/// Config used when no --config file is given: the full registry sweep.
RunConfig default_config();
/// Loads the JSON schema; unknown keys are rejected.
RunConfig load_config(const std::string& path);

struct ReportRow {
  std::string function;
  std::string params;
  int b = 2;
  std::uint64_t k = 0;
  int v = 0;
  std::int64_t mu_r = 0;
  std::int64_t mu_r_per = 0;
  double coeff_re = 0.0;
  double coeff_im = 0.0;
  double coeff_abs = 0.0;
  std::string theorem;
  double bound = 0.0;
  double ratio = 0.0;
  bool violation = false;
  bool estimated_inputs = false;
};

struct SkippedPair {
  std::string function;
  std::string theorem;
  std::string reason;
};

struct TheoremSummary {
  long rows = 0;
  long violations = 0;
  double max_ratio = 0.0;
};

struct LimitRow {
  std::string function;
  std::uint64_t kprime = 0;
  int s = 1;
  int a1 = 0;
  double residual = 0.0;
};

struct VerificationReport {
  std::vector<ReportRow> rows;
  std::vector<SkippedPair> skipped;
  std::map<std::string, TheoremSummary> per_theorem;
  long violations = 0;
  double max_ratio = 0.0;
  std::vector<LimitRow> limit_table;
  std::map<std::string, double> limit_rates;  // "function|k'=..|s=..": fitted decay factor
};

/// Oracle-vs-bound sweep over every corpus member, theorem and 1 <= k < b^m.
/// Deterministic for a fixed config, independent of the worker count.
VerificationReport run_verify(const RunConfig& config);

/// Limit experiment: residuals of b^(a_1) hat f(k) against
/// -(1-omega^-kappa_1)^-1 hat f'(k') along a_1 = a_min..a_max, plus the
/// nested s-level ladders for s <= s_max.
VerificationReport run_lower_bound(const RunConfig& config);

struct BenchRow {
  int base = 2;
  int level = 0;
  std::uint64_t n = 0;
  double fwt_seconds = 0.0;
  double naive_seconds = 0.0;
  double max_abs_diff = 0.0;
  double roundtrip_error = 0.0;
};

/// fwt-vs-naive verification and wall-clock per size.
std::vector<BenchRow> run_transform_bench(const RunConfig& config);

/// report.csv: fixed column set, 17 significant digits, LF line endings.
std::string format_report_csv(const VerificationReport& report);
/// summary.json: totals, per-theorem maxima, skipped pairs, limit table.
std::string format_summary_json(const VerificationReport& report);
std::string format_bench_csv(const std::vector<BenchRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace walshdecay
