#include "walshdecay/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "walshdecay/bounds.hpp"
#include "walshdecay/exact.hpp"

namespace walshdecay {

namespace {

// Oracle noise floor: |coefficient| below this counts as zero when a bound is
// exactly zero.
constexpr double kZeroFloor = 1e-10;

std::uint64_t upow(int base, int e) {
  std::uint64_t p = 1;
  for (int i = 0; i < e; ++i) p *= static_cast<std::uint64_t>(base);
  return p;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string params_string(const std::map<std::string, double>& params) {
  std::string out;
  for (const auto& [key, value] : params) {
    if (!out.empty()) out += ";";
    out += key + "=" + fmt17(value);
  }
  return out;
}

struct PairTask {
  std::size_t entry_index;
  std::size_t theorem_index;
};

}  // namespace

RunConfig default_config() {
  RunConfig cfg;
  cfg.corpus = {
      {"exp", {{"a", 1.0}}},          {"geometric", {{"c", 0.5}}},
      {"sine_pi", {}},                {"bernoulli", {{"p", 4}}},
      {"monomial", {{"p", 5}}},       {"series_delta", {{"delta", 3.5}}},
  };
  cfg.theorems = {
      {"lemma3", 0, 1.0},   {"lemma4", 1, 1.0},   {"theorem1", 0, 1.0},
      {"theorem2", 3, 1.0}, {"theorem3", 3, 1.0}, {"theorem4", 2, 1.0},
  };
  return cfg;
}

namespace {

std::map<std::string, double> parse_params(const nlohmann::json& j) {
  std::map<std::string, double> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value().get<double>();
  return out;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  in >> j;
  RunConfig cfg = default_config();
  cfg.corpus.clear();
  cfg.theorems.clear();
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const auto& val = it.value();
    if (key == "base") cfg.base = val.get<int>();
    else if (key == "max_level") cfg.max_level = val.get<int>();
    else if (key == "tol") cfg.tol = val.get<double>();
    else if (key == "tol_rel") cfg.tol_rel = val.get<double>();
    else if (key == "quad_order") cfg.quad_order = val.get<int>();
    else if (key == "min_level") cfg.min_level = val.get<int>();
    else if (key == "out_dir") cfg.out_dir = val.get<std::string>();
    else if (key == "jobs") cfg.jobs = val.get<int>();
    else if (key == "bench_levels") cfg.bench_levels = val.get<std::vector<int>>();
    else if (key == "corpus") {
      for (const auto& c : val) {
        CorpusSelection sel;
        sel.name = c.at("name").get<std::string>();
        if (c.contains("params")) sel.params = parse_params(c.at("params"));
        cfg.corpus.push_back(std::move(sel));
      }
    } else if (key == "theorems") {
      for (const auto& t : val) {
        TheoremSelection sel;
        sel.tag = t.at("tag").get<std::string>();
        if (t.contains("r")) sel.r = t.at("r").get<int>();
        if (t.contains("lambda")) sel.lambda = t.at("lambda").get<double>();
        cfg.theorems.push_back(std::move(sel));
      }
    } else if (key == "lower_bound") {
      const auto& lb = val;
      if (lb.contains("function")) cfg.lower_bound.function = lb.at("function").get<std::string>();
      if (lb.contains("params")) cfg.lower_bound.params = parse_params(lb.at("params"));
      if (lb.contains("kappa1")) cfg.lower_bound.kappa1 = lb.at("kappa1").get<int>();
      if (lb.contains("kprime")) cfg.lower_bound.kprime = lb.at("kprime").get<std::vector<std::uint64_t>>();
      if (lb.contains("a_min")) cfg.lower_bound.a_min = lb.at("a_min").get<int>();
      if (lb.contains("a_max")) cfg.lower_bound.a_max = lb.at("a_max").get<int>();
      if (lb.contains("s_max")) cfg.lower_bound.s_max = lb.at("s_max").get<int>();
      if (lb.contains("gap")) cfg.lower_bound.gap = lb.at("gap").get<int>();
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
  if (cfg.corpus.empty()) cfg.corpus = default_config().corpus;
  if (cfg.theorems.empty()) cfg.theorems = default_config().theorems;
  if (cfg.base < 2 || cfg.max_level < 0 || !(cfg.tol > 0.0) || !(cfg.tol_rel > 0.0))
    throw std::runtime_error("invalid config values");
  return cfg;
}

namespace {

struct PairResult {
  std::vector<ReportRow> rows;
  std::optional<SkippedPair> skipped;
};

int theorem_report_order(const CorpusEntry& entry, const TheoremSelection& thm) {
  if (thm.tag == "lemma3")
    return static_cast<int>(entry.fn.params.at("p"));
  if (thm.tag == "lemma4") return 1;
  return thm.r;
}

PairResult evaluate_pair(const RunConfig& cfg, const CorpusEntry& entry,
                         const std::vector<Complex>& coeffs, const TheoremSelection& thm) {
  PairResult result;
  const std::string fname = entry.fn.name;
  const std::string pstring = params_string(entry.fn.params);
  const std::uint64_t kmax = upow(cfg.base, cfg.max_level);

  // per-pair precomputation, or a skip when the member lacks the data
  int monomial_p = 0;
  std::optional<PowerSeriesSeminorms> sums;
  std::optional<SmoothnessData> data;
  double vlambda1 = 0.0;
  bool estimated = false;
  try {
    if (thm.tag == "lemma3") {
      if (fname != "monomial") throw std::invalid_argument("bound applies to monomials only");
      monomial_p = static_cast<int>(entry.fn.params.at("p"));
    } else if (thm.tag == "lemma4") {
      if (thm.lambda == 1.0) {
        vlambda1 = entry.integral_abs_deriv(1);
      } else {
        vlambda1 = fractional_variation(entry.fn, thm.lambda, 12, cfg.base);
        estimated = true;
      }
    } else if (thm.tag == "theorem1") {
      if (!entry.fn.has_series) throw std::invalid_argument("no power-series data");
      sums.emplace(make_seminorms(entry));
    } else if (thm.tag == "theorem2" || thm.tag == "theorem3") {
      data.emplace(smoothness_data(entry, thm.r, thm.lambda));
      estimated = data->v_is_estimate;
      if (thm.tag == "theorem3" && thm.r <= 1) throw std::invalid_argument("needs r > 1");
    } else if (thm.tag == "theorem4") {
      if (thm.r <= 1) throw std::invalid_argument("needs r > 1");
      if (!entry.periodic_up_to(thm.r))
        throw std::invalid_argument("not in the periodic space for this r");
      data.emplace(smoothness_data(entry, thm.r, thm.lambda));
    } else {
      throw std::invalid_argument("unknown theorem tag: " + thm.tag);
    }
  } catch (const std::exception& e) {
    result.skipped = SkippedPair{fname, thm.tag, e.what()};
    return result;
  }

  const int r_report = theorem_report_order(entry, thm);
  for (std::uint64_t kk = 1; kk < kmax; ++kk) {
    const auto k = IndexDecomposition::decompose(kk, cfg.base);
    double bound = 0.0;
    if (thm.tag == "lemma3") {
      bound = bound_monomial(monomial_p, k);
    } else if (thm.tag == "lemma4") {
      bound = bound_holder(thm.lambda, vlambda1, k);
    } else if (thm.tag == "theorem1") {
      bound = bound_power_series(*sums, k);
    } else if (thm.tag == "theorem2") {
      bound = bound_cr(*data, k).bound;
    } else if (thm.tag == "theorem3") {
      bound = bound_sobolev(*data, k).bound;
    } else {
      bound = bound_sobolev_periodic(data->integral_abs_r, thm.r, k);
    }

    const Complex c = coeffs[kk];
    ReportRow row;
    row.function = fname;
    row.params = pstring;
    row.b = cfg.base;
    row.k = kk;
    row.v = k.digit_count();
    row.mu_r = mu(r_report, k);
    row.mu_r_per = mu_per(r_report, k);
    row.coeff_re = c.real();
    row.coeff_im = c.imag();
    row.coeff_abs = std::abs(c);
    row.theorem = thm.tag;
    row.bound = bound;
    row.estimated_inputs = estimated;
    if (bound > 0.0) {
      row.ratio = row.coeff_abs / bound;
      row.violation = row.ratio > 1.0 + cfg.tol_rel;
    } else {
      row.ratio = row.coeff_abs <= kZeroFloor ? 0.0
                                              : std::numeric_limits<double>::infinity();
      row.violation = row.coeff_abs > kZeroFloor;
    }
    // estimated variation inputs can only understate a bound; never count
    // those rows as violations, they are reported for inspection instead
    if (row.violation && estimated) row.violation = false;
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace

VerificationReport run_verify(const RunConfig& cfg) {
  VerificationReport report;
  if (cfg.base < 2) throw std::invalid_argument("run_verify: base must be >= 2");

  std::vector<CorpusEntry> entries;
  entries.reserve(cfg.corpus.size());
  for (const auto& sel : cfg.corpus) entries.push_back(make_corpus_entry(sel.name, sel.params));

  // one oracle sweep per corpus member
  const int sweep_level = std::max(cfg.max_level, cfg.min_level);
  std::vector<std::vector<Complex>> coeffs(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    coeffs[i] = walsh_coeff_sweep(entries[i].fn, cfg.base, sweep_level, cfg.quad_order);

  std::vector<PairTask> tasks;
  for (std::size_t e = 0; e < entries.size(); ++e)
    for (std::size_t t = 0; t < cfg.theorems.size(); ++t) tasks.push_back({e, t});

  std::vector<PairResult> results(tasks.size());
  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      results[i] = evaluate_pair(cfg, entries[tasks[i].entry_index],
                                 coeffs[tasks[i].entry_index], cfg.theorems[tasks[i].theorem_index]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        results[i] = evaluate_pair(cfg, entries[tasks[i].entry_index],
                                   coeffs[tasks[i].entry_index],
                                   cfg.theorems[tasks[i].theorem_index]);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (auto& pr : results) {
    if (pr.skipped) report.skipped.push_back(*pr.skipped);
    for (auto& row : pr.rows) report.rows.push_back(std::move(row));
  }
  std::sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.function != b.function) return a.function < b.function;
    if (a.params != b.params) return a.params < b.params;
    if (a.k != b.k) return a.k < b.k;
    return a.theorem < b.theorem;
  });
  std::sort(report.skipped.begin(), report.skipped.end(), [](const SkippedPair& a, const SkippedPair& b) {
    return std::tie(a.function, a.theorem) < std::tie(b.function, b.theorem);
  });

  for (const auto& row : report.rows) {
    auto& summary = report.per_theorem[row.theorem];
    ++summary.rows;
    if (row.violation) ++summary.violations;
    if (std::isfinite(row.ratio)) {
      summary.max_ratio = std::max(summary.max_ratio, row.ratio);
      report.max_ratio = std::max(report.max_ratio, row.ratio);
    }
    if (row.violation) ++report.violations;
  }
  return report;
}

VerificationReport run_lower_bound(const RunConfig& cfg) {
  VerificationReport report;
  const int b = cfg.base;
  const auto& lb = cfg.lower_bound;
  if (lb.kappa1 < 1 || lb.kappa1 >= b)
    throw std::invalid_argument("run_lower_bound: kappa1 outside 1..base-1");
  const CorpusEntry entry = make_corpus_entry(lb.function, lb.params);

  for (const std::uint64_t kp : lb.kprime) {
    const auto kpd = IndexDecomposition::decompose(kp, b);
    for (int s = 1; s <= lb.s_max; ++s) {
      if (!entry.fn.has_derivative(s)) break;
      // hat f^(s)(k^(s)) once per ladder
      const auto ds = derivative_spec(entry, s);
      const Complex fs = walsh_coeff(ds, kpd, cfg.quad_order, cfg.min_level).value;
      Complex limit = fs;
      for (int i = 0; i < s; ++i) limit /= (1.0 - unit_root(b, -lb.kappa1));
      if (s % 2 == 1) limit = -limit;

      const int a_lo = std::max(lb.a_min, kpd.leading_position() + 1 + (s - 1) * lb.gap);
      for (int a = a_lo; a <= lb.a_max; ++a) {
        auto k = kpd;
        double scale = 1.0;
        for (int i = s - 1; i >= 0; --i) {  // positions a, a+gap, ..., a+(s-1)gap
          const int pos = a + (s - 1 - i) * lb.gap;
          k = k.with_prepended(pos, lb.kappa1);
          scale *= std::pow(static_cast<double>(b), pos);
        }
        const Complex fk = walsh_coeff(entry.fn, k, cfg.quad_order, cfg.min_level).value;
        const double residual = std::abs(scale * fk - limit);
        report.limit_table.push_back({entry.fn.name, kp, s, a, residual});
      }
      // fitted geometric factor per level across the ladder
      std::vector<double> ladder;
      for (const auto& row : report.limit_table)
        if (row.kprime == kp && row.s == s) ladder.push_back(row.residual);
      if (ladder.size() >= 2 && ladder.front() > 0.0 && ladder.back() > 0.0) {
        const double rate = std::pow(ladder.back() / ladder.front(),
                                     1.0 / static_cast<double>(ladder.size() - 1));
        report.limit_rates[entry.fn.name + "|k'=" + std::to_string(kp) +
                           "|s=" + std::to_string(s)] = rate;
      }
    }
  }
  return report;
}

std::vector<BenchRow> run_transform_bench(const RunConfig& cfg) {
  std::vector<int> levels = cfg.bench_levels;
  if (levels.empty()) {
    if (cfg.base == 2) levels = {8, 10, 12};
    else if (cfg.base == 3) levels = {5, 6, 7};
    else levels = {3, 4, 5};
  }
  std::vector<BenchRow> rows;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int level : levels) {
    const std::uint64_t n = upow(cfg.base, level);
    SampleGrid grid{cfg.base, level, {}};
    grid.values.resize(static_cast<std::size_t>(n));
    for (auto& z : grid.values) z = {dist(rng), dist(rng)};

    BenchRow row;
    row.base = cfg.base;
    row.level = level;
    row.n = n;

    SampleGrid fast{};
    double best = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      fast = fwt(grid, TransformDirection::forward);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    row.fwt_seconds = best;

    const auto t0 = std::chrono::steady_clock::now();
    const auto slow = naive_walsh_transform(grid, TransformDirection::forward);
    const auto t1 = std::chrono::steady_clock::now();
    row.naive_seconds = std::chrono::duration<double>(t1 - t0).count();

    double diff = 0.0;
    for (std::size_t i = 0; i < fast.values.size(); ++i)
      diff = std::max(diff, std::abs(fast.values[i] - slow.values[i]));
    row.max_abs_diff = diff;

    const auto back = fwt(fast, TransformDirection::inverse);
    double rt = 0.0;
    for (std::size_t i = 0; i < back.values.size(); ++i)
      rt = std::max(rt, std::abs(back.values[i] - grid.values[i]));
    row.roundtrip_error = rt;
    rows.push_back(row);
  }
  return rows;
}

std::string format_report_csv(const VerificationReport& report) {
  std::string out =
      "function,params,b,k,v,mu_r,mu_r_per,coeff_re,coeff_im,coeff_abs,theorem,bound,ratio\n";
  for (const auto& r : report.rows) {
    out += r.function + "," + r.params + "," + std::to_string(r.b) + "," +
           std::to_string(r.k) + "," + std::to_string(r.v) + "," + std::to_string(r.mu_r) +
           "," + std::to_string(r.mu_r_per) + "," + fmt17(r.coeff_re) + "," +
           fmt17(r.coeff_im) + "," + fmt17(r.coeff_abs) + "," + r.theorem + "," +
           fmt17(r.bound) + "," + fmt17(r.ratio) + "\n";
  }
  return out;
}

std::string format_summary_json(const VerificationReport& report) {
  nlohmann::json j;
  j["rows"] = report.rows.size();
  j["violations"] = report.violations;
  j["max_ratio"] = report.max_ratio;
  nlohmann::json per;
  for (const auto& [tag, summary] : report.per_theorem) {
    per[tag] = {{"rows", summary.rows},
                {"violations", summary.violations},
                {"max_ratio", summary.max_ratio}};
  }
  j["theorems"] = per;
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : report.skipped)
    skipped.push_back({{"function", s.function}, {"theorem", s.theorem}, {"reason", s.reason}});
  j["skipped"] = skipped;
  nlohmann::json limit = nlohmann::json::array();
  for (const auto& row : report.limit_table)
    limit.push_back({{"function", row.function},
                     {"kprime", row.kprime},
                     {"s", row.s},
                     {"a1", row.a1},
                     {"residual", row.residual}});
  j["limit_table"] = limit;
  j["limit_rates"] = report.limit_rates;
  return j.dump(2) + "\n";
}

std::string format_bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "base,level,n,fwt_seconds,naive_seconds,max_abs_diff,roundtrip_error\n";
  for (const auto& r : rows) {
    out += std::to_string(r.base) + "," + std::to_string(r.level) + "," + std::to_string(r.n) +
           "," + fmt17(r.fwt_seconds) + "," + fmt17(r.naive_seconds) + "," +
           fmt17(r.max_abs_diff) + "," + fmt17(r.roundtrip_error) + "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace walshdecay
