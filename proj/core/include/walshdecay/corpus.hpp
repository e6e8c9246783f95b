#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "walshdecay/bounds.hpp"
#include "walshdecay/oracle.hpp"

namespace walshdecay {

/// A corpus member: evaluators plus the analytic data the bounds need.
/// All members have closed-form derivatives, so bound inputs are honest
/// analytic constants rather than fitted ones.
struct CorpusEntry {
  FunctionSpec fn;
  int data_order = 0;                            // data below valid for s <= data_order
  std::function<double(int)> deriv_at_zero;      // f^(s)(0)
  std::function<double(int)> integral_deriv;     // int_0^1 f^(s)
  std::function<double(int)> integral_abs_deriv; // int_0^1 |f^(s)|

  bool periodic_up_to(int r, double tol = 1e-12) const;
};

CorpusEntry make_monomial(int p);
CorpusEntry make_exponential(double a);
CorpusEntry make_geometric(double c);  // 1/(1-cx), 0 < c < 1
CorpusEntry make_sine_pi();
CorpusEntry make_bernoulli_entry(int p);  // b_p = B_p/p!
/// Truncated series sum_{r=1}^{truncation} r^-delta x^r.
CorpusEntry make_series_delta(double delta, int truncation = 60);

/// Registry lookup by name ("monomial", "exp", "geometric", "sine_pi",
/// "bernoulli", "series_delta") with parameters (p, a, c, delta, truncation).
CorpusEntry make_corpus_entry(const std::string& name,
                              const std::map<std::string, double>& params);

/// Power-series tail sums for the entry's (finite or fast-decaying) series.
PowerSeriesSeminorms make_seminorms(const CorpusEntry& entry);

/// Seminorms of the untruncated series f_r = r^-delta: feasibility is
/// restricted to u <= ceil(delta)-2 with an integral-test tail bound.
PowerSeriesSeminorms make_delta_series_seminorms(double delta, int r_cap = 4000);

/// Bound inputs for (r, lambda). For lambda = 1 the variation data is the
/// analytic int |f^(s+1)|; otherwise the certified-lower estimator is used
/// and the result is flagged.
SmoothnessData smoothness_data(const CorpusEntry& entry, int r, double lambda = 1.0,
                               int variation_depth = 12);

/// f^(s) packaged as its own FunctionSpec (derivatives shift down).
FunctionSpec derivative_spec(const CorpusEntry& entry, int s);

}  // namespace walshdecay
