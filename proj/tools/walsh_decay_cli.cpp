// Command-line harness: bound-verification sweeps, the lower-bound limit
// experiment, a transform benchmark, and one-shot coefficient queries.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "walshdecay/exact.hpp"
#include "walshdecay/verify.hpp"

namespace {

using namespace walshdecay;

struct CommonFlags {
  std::string config_path;
  std::optional<int> base;
  std::optional<int> max_level;
  std::optional<std::string> out_dir;
  std::optional<int> jobs;
  std::optional<double> tol;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--base,-b", flags.base, "base b >= 2");
  cmd->add_option("--max-level,-m", flags.max_level, "sweep k < base^max-level");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--jobs,-j", flags.jobs, "worker count");
  cmd->add_option("--tol", flags.tol, "recursion/series tolerance");
}

RunConfig resolve_config(const CommonFlags& flags) {
  RunConfig cfg = flags.config_path.empty() ? default_config() : load_config(flags.config_path);
  if (flags.base) cfg.base = *flags.base;
  if (flags.max_level) cfg.max_level = *flags.max_level;
  if (flags.out_dir) cfg.out_dir = *flags.out_dir;
  if (flags.jobs) cfg.jobs = *flags.jobs;
  if (flags.tol) cfg.tol = *flags.tol;
  return cfg;
}

void ensure_out_dir(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
}

int cmd_verify(const CommonFlags& flags) {
  const RunConfig cfg = resolve_config(flags);
  ensure_out_dir(cfg);
  const auto report = run_verify(cfg);
  write_text_file(cfg.out_dir + "/report.csv", format_report_csv(report));
  write_text_file(cfg.out_dir + "/summary.json", format_summary_json(report));
  std::printf("rows: %zu  skipped pairs: %zu  violations: %ld  max ratio: %.6g\n",
              report.rows.size(), report.skipped.size(), report.violations, report.max_ratio);
  for (const auto& s : report.skipped)
    std::printf("  skipped %s x %s: %s\n", s.function.c_str(), s.theorem.c_str(),
                s.reason.c_str());
  return report.violations == 0 ? 0 : 1;
}

int cmd_lowerbound(const CommonFlags& flags) {
  const RunConfig cfg = resolve_config(flags);
  ensure_out_dir(cfg);
  const auto report = run_lower_bound(cfg);
  write_text_file(cfg.out_dir + "/summary.json", format_summary_json(report));
  std::printf("%-10s %6s %3s %4s %14s\n", "function", "k'", "s", "a1", "residual");
  for (const auto& row : report.limit_table)
    std::printf("%-10s %6llu %3d %4d %14.6e\n", row.function.c_str(),
                static_cast<unsigned long long>(row.kprime), row.s, row.a1, row.residual);
  for (const auto& [key, rate] : report.limit_rates)
    std::printf("rate %-24s %.6f\n", key.c_str(), rate);
  return 0;
}

int cmd_bench(const CommonFlags& flags) {
  const RunConfig cfg = resolve_config(flags);
  ensure_out_dir(cfg);
  const auto rows = run_transform_bench(cfg);
  write_text_file(cfg.out_dir + "/bench.csv", format_bench_csv(rows));
  std::printf("%4s %6s %10s %14s %14s %12s %12s\n", "base", "level", "n", "fwt_s", "naive_s",
              "max_diff", "roundtrip");
  bool ok = true;
  for (const auto& r : rows) {
    std::printf("%4d %6d %10llu %14.6e %14.6e %12.3e %12.3e\n", r.base, r.level,
                static_cast<unsigned long long>(r.n), r.fwt_seconds, r.naive_seconds,
                r.max_abs_diff, r.roundtrip_error);
    ok = ok && r.max_abs_diff <= 1e-10 && r.roundtrip_error <= 1e-10;
  }
  return ok ? 0 : 1;
}

struct CoeffFlags {
  std::string function = "exp";
  std::vector<std::string> params;
  std::uint64_t k = 1;
  int base = 2;
  double tol = 1e-12;
  int quad_order = 8;
  int min_level = 4;
  int truncation = 40;
};

int cmd_coeff(const CoeffFlags& flags) {
  std::map<std::string, double> params;
  for (const auto& kv : flags.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--param expects name=value");
    params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  const CorpusEntry entry = make_corpus_entry(flags.function, params);
  const auto k = IndexDecomposition::decompose(flags.k, flags.base);

  std::printf("k = %llu (base %d): v = %d, digits =", static_cast<unsigned long long>(flags.k),
              flags.base, k.digit_count());
  for (const auto& d : k.digits()) std::printf(" (a=%d,kappa=%d)", d.position, d.digit);
  std::printf("\n");

  const auto oracle = walsh_coeff(entry.fn, k, flags.quad_order, flags.min_level);
  std::printf("oracle    : %+.17e %+.17e i   (est. quadrature error %.3e)\n",
              oracle.value.real(), oracle.value.imag(), oracle.error_estimate);

  if (entry.fn.has_series) {
    const auto series = power_series_coeff(entry.fn, k, flags.truncation, flags.tol);
    std::printf("series    : %+.17e %+.17e i   (est. truncation error %.3e)\n",
                series.value.real(), series.value.imag(), series.error_estimate);
    std::printf("difference: %.3e\n", std::abs(series.value - oracle.value));
  }
  if (entry.fn.name == "bernoulli") {
    const int p = static_cast<int>(entry.fn.params.at("p"));
    const Complex via_beta = beta(p, k, flags.tol);
    std::printf("recursion : %+.17e %+.17e i   (beta_%d)\n", via_beta.real(), via_beta.imag(), p);
    std::printf("difference: %.3e\n", std::abs(via_beta - oracle.value));
  }
  if (entry.fn.name == "monomial") {
    const int p = static_cast<int>(entry.fn.params.at("p"));
    const Complex via_chi = chi(p, k, flags.tol);
    std::printf("recursion : %+.17e %+.17e i   (chi_%d)\n", via_chi.real(), via_chi.imag(), p);
    std::printf("difference: %.3e\n", std::abs(via_chi - oracle.value));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Walsh coefficient decay analysis"};
  app.require_subcommand(1);

  CommonFlags verify_flags, lower_flags, bench_flags;
  auto* verify = app.add_subcommand("verify", "bound-verification sweep over the corpus");
  add_common(verify, verify_flags);
  auto* lower = app.add_subcommand("lowerbound", "limit experiment for the lower-bound theorem");
  add_common(lower, lower_flags);
  auto* bench = app.add_subcommand("bench", "fast-transform benchmark and verification");
  add_common(bench, bench_flags);

  CoeffFlags coeff_flags;
  auto* coeff = app.add_subcommand("coeff", "one-shot coefficient query");
  coeff->add_option("--function,-f", coeff_flags.function, "corpus member name");
  coeff->add_option("--param,-p", coeff_flags.params, "member parameter name=value");
  coeff->add_option("--k,-k", coeff_flags.k, "coefficient index")->required();
  coeff->add_option("--base,-b", coeff_flags.base, "base b >= 2");
  coeff->add_option("--tol", coeff_flags.tol, "series tolerance");
  coeff->add_option("--quad-order", coeff_flags.quad_order, "Gauss-Legendre order");
  coeff->add_option("--min-level", coeff_flags.min_level, "minimum cell resolution level");
  coeff->add_option("--truncation", coeff_flags.truncation, "power-series truncation order");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(verify_flags);
    if (lower->parsed()) return cmd_lowerbound(lower_flags);
    if (bench->parsed()) return cmd_bench(bench_flags);
    if (coeff->parsed()) return cmd_coeff(coeff_flags);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
