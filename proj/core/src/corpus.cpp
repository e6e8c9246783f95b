#include "walshdecay/corpus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "walshdecay/bernoulli.hpp"

namespace walshdecay {

namespace {

constexpr int kDataOrder = 10;

double falling_product(int r, int terms) {
  // r (r-1) ... (r-terms+1)
  double p = 1.0;
  for (int i = 0; i < terms; ++i) p *= (r - i);
  return p;
}

double factorial(int n) {
  double p = 1.0;
  for (int i = 2; i <= n; ++i) p *= i;
  return p;
}

}  // namespace

bool CorpusEntry::periodic_up_to(int r, double tol) const {
  for (int s = 0; s < r; ++s)
    if (std::abs(integral_deriv(s)) > tol) return false;
  return true;
}

CorpusEntry make_monomial(int p) {
  if (p < 0 || p > 12) throw std::invalid_argument("make_monomial: p out of range");
  CorpusEntry e;
  e.fn.name = "monomial";
  e.fn.params = {{"p", static_cast<double>(p)}};
  e.fn.f = [p](double x) { return std::pow(x, p); };
  e.fn.derivatives.resize(kDataOrder + 1);
  for (int s = 0; s <= kDataOrder; ++s) {
    e.fn.derivatives[static_cast<std::size_t>(s)] = [p, s](double x) {
      if (s > p) return 0.0;
      return falling_product(p, s) * std::pow(x, p - s);
    };
  }
  e.fn.has_series = true;
  e.fn.series_coeff = [p](int r) { return r == p ? 1.0 : 0.0; };
  e.fn.series_tail_abs = [p](int R) { return R >= p ? 0.0 : 1.0; };
  e.data_order = kDataOrder;
  e.deriv_at_zero = [p](int s) { return s == p ? factorial(p) : 0.0; };
  e.integral_deriv = [p](int s) {
    if (s > p) return 0.0;
    return falling_product(p, s) / (p - s + 1);
  };
  e.integral_abs_deriv = e.integral_deriv;  // non-negative on [0,1]
  return e;
}

CorpusEntry make_exponential(double a) {
  if (a == 0.0) throw std::invalid_argument("make_exponential: a must be nonzero");
  CorpusEntry e;
  e.fn.name = "exp";
  e.fn.params = {{"a", a}};
  e.fn.f = [a](double x) { return std::exp(a * x); };
  e.fn.derivatives.resize(kDataOrder + 1);
  for (int s = 0; s <= kDataOrder; ++s)
    e.fn.derivatives[static_cast<std::size_t>(s)] = [a, s](double x) {
      return std::pow(a, s) * std::exp(a * x);
    };
  e.fn.has_series = true;
  e.fn.series_coeff = [a](int r) { return std::pow(a, r) / factorial(r); };
  e.fn.series_tail_abs = [a](int R) {
    const double q = std::abs(a) / (R + 2);
    double t = std::pow(std::abs(a), R + 1) / factorial(R + 1);
    return q < 1.0 ? t / (1.0 - q) : std::numeric_limits<double>::infinity();
  };
  e.data_order = kDataOrder;
  const double mean = (std::exp(a) - 1.0) / a;
  e.deriv_at_zero = [a](int s) { return std::pow(a, s); };
  e.integral_deriv = [a, mean](int s) { return std::pow(a, s) * mean; };
  e.integral_abs_deriv = [a, mean](int s) { return std::pow(std::abs(a), s) * mean; };
  return e;
}

CorpusEntry make_geometric(double c) {
  if (!(c > 0.0) || c >= 1.0) throw std::invalid_argument("make_geometric: need 0 < c < 1");
  CorpusEntry e;
  e.fn.name = "geometric";
  e.fn.params = {{"c", c}};
  e.fn.f = [c](double x) { return 1.0 / (1.0 - c * x); };
  e.fn.derivatives.resize(kDataOrder + 1);
  for (int s = 0; s <= kDataOrder; ++s)
    e.fn.derivatives[static_cast<std::size_t>(s)] = [c, s](double x) {
      return factorial(s) * std::pow(c, s) * std::pow(1.0 - c * x, -(s + 1));
    };
  e.fn.has_series = true;
  e.fn.series_coeff = [c](int r) { return std::pow(c, r); };
  e.fn.series_tail_abs = [c](int R) { return std::pow(c, R + 1) / (1.0 - c); };
  e.data_order = kDataOrder;
  e.deriv_at_zero = [c](int s) { return factorial(s) * std::pow(c, s); };
  e.integral_deriv = [c](int s) {
    if (s == 0) return -std::log(1.0 - c) / c;
    return factorial(s - 1) * std::pow(c, s - 1) * (std::pow(1.0 - c, -s) - 1.0);
  };
  e.integral_abs_deriv = e.integral_deriv;  // all derivatives positive
  return e;
}

CorpusEntry make_sine_pi() {
  CorpusEntry e;
  const double pi = std::numbers::pi;
  e.fn.name = "sine_pi";
  e.fn.f = [pi](double x) { return std::sin(pi * x); };
  e.fn.derivatives.resize(kDataOrder + 1);
  for (int s = 0; s <= kDataOrder; ++s)
    e.fn.derivatives[static_cast<std::size_t>(s)] = [pi, s](double x) {
      return std::pow(pi, s) * std::sin(pi * x + s * pi / 2.0);
    };
  e.fn.has_series = true;
  e.fn.series_coeff = [pi](int r) {
    if (r % 2 == 0) return 0.0;
    const double sign = ((r - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::pow(pi, r) / factorial(r);
  };
  e.fn.series_tail_abs = [pi](int R) {
    const double q = pi / (R + 2);
    double t = std::pow(pi, R + 1) / factorial(R + 1);
    return q < 1.0 ? t / (1.0 - q) : std::numeric_limits<double>::infinity();
  };
  e.data_order = kDataOrder;
  e.deriv_at_zero = [pi](int s) {
    switch (s % 4) {  // sin(s pi/2)
      case 0: return 0.0;
      case 1: return std::pow(pi, s);
      case 2: return 0.0;
      default: return -std::pow(pi, s);
    }
  };
  e.integral_deriv = [pi](int s) {
    switch (s % 4) {  // 2 pi^(s-1) cos(s pi/2)
      case 0: return 2.0 * std::pow(pi, s - 1);
      case 2: return -2.0 * std::pow(pi, s - 1);
      default: return 0.0;
    }
  };
  e.integral_abs_deriv = [pi](int s) { return 2.0 * std::pow(pi, s - 1); };
  return e;
}

CorpusEntry make_bernoulli_entry(int p) {
  if (p < 1 || p > 12) throw std::invalid_argument("make_bernoulli_entry: p out of range");
  CorpusEntry e;
  e.fn.name = "bernoulli";
  e.fn.params = {{"p", static_cast<double>(p)}};
  e.fn.f = [p](double x) { return eval_b(p, x); };
  e.fn.derivatives.resize(kDataOrder + 1);
  for (int s = 0; s <= kDataOrder; ++s)
    e.fn.derivatives[static_cast<std::size_t>(s)] = [p, s](double x) {
      return s <= p ? eval_b(p - s, x) : 0.0;
    };
  const auto coeffs = bernoulli(p).scaled_coefficients();
  e.fn.has_series = true;
  e.fn.series_coeff = [coeffs](int r) {
    return r < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(r)] : 0.0;
  };
  e.fn.series_tail_abs = [p](int R) { return R >= p ? 0.0 : 1.0; };
  e.data_order = kDataOrder;
  e.deriv_at_zero = [p](int s) { return s <= p ? eval_b(p - s, 0.0) : 0.0; };
  e.integral_deriv = [p](int s) {
    if (s > p) return 0.0;
    return s == p ? 1.0 : 0.0;  // int b_m = 0 for m >= 1, b_0 = 1
  };
  e.integral_abs_deriv = [p](int s) { return s <= p ? integral_abs_b(p - s) : 0.0; };
  return e;
}

CorpusEntry make_series_delta(double delta, int truncation) {
  if (!(delta > 1.0)) throw std::invalid_argument("make_series_delta: delta must exceed 1");
  if (truncation < 1) throw std::invalid_argument("make_series_delta: truncation must be >= 1");
  CorpusEntry e;
  e.fn.name = "series_delta";
  e.fn.params = {{"delta", delta}, {"truncation", static_cast<double>(truncation)}};
  const int rt = truncation;
  std::vector<double> coeffs(static_cast<std::size_t>(rt) + 1, 0.0);
  for (int r = 1; r <= rt; ++r) coeffs[static_cast<std::size_t>(r)] = std::pow(r, -delta);
  e.fn.f = [coeffs](double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  };
  e.fn.derivatives.resize(kDataOrder + 1);
  for (int s = 0; s <= kDataOrder; ++s)
    e.fn.derivatives[static_cast<std::size_t>(s)] = [coeffs, s, rt](double x) {
      double acc = 0.0;
      for (int r = rt; r >= s; --r)
        acc = acc * x + coeffs[static_cast<std::size_t>(r)] * falling_product(r, s);
      return acc;
    };
  e.fn.has_series = true;
  e.fn.series_coeff = [coeffs, rt](int r) {
    return (r >= 1 && r <= rt) ? coeffs[static_cast<std::size_t>(r)] : 0.0;
  };
  e.fn.series_tail_abs = [delta, rt](int R) {
    double acc = 0.0;
    for (int r = R + 1; r <= rt; ++r) acc += std::pow(r, -delta);
    return acc;
  };
  e.data_order = kDataOrder;
  e.deriv_at_zero = [delta, rt](int s) {
    return (s >= 1 && s <= rt) ? factorial(s) * std::pow(s, -delta) : 0.0;
  };
  e.integral_deriv = [delta, rt](int s) {
    double acc = 0.0;
    for (int r = std::max(s, 1); r <= rt; ++r)
      acc += std::pow(r, -delta) * falling_product(r, s) / (r - s + 1);
    return acc;
  };
  e.integral_abs_deriv = e.integral_deriv;  // positive coefficients
  return e;
}

CorpusEntry make_corpus_entry(const std::string& name,
                              const std::map<std::string, double>& params) {
  auto get = [&params](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "monomial") return make_monomial(static_cast<int>(get("p", 2)));
  if (name == "exp") return make_exponential(get("a", 1.0));
  if (name == "geometric") return make_geometric(get("c", 0.5));
  if (name == "sine_pi") return make_sine_pi();
  if (name == "bernoulli") return make_bernoulli_entry(static_cast<int>(get("p", 4)));
  if (name == "series_delta")
    return make_series_delta(get("delta", 3.5), static_cast<int>(get("truncation", 60)));
  throw std::invalid_argument("unknown corpus member: " + name);
}

PowerSeriesSeminorms make_seminorms(const CorpusEntry& entry) {
  if (!entry.fn.has_series)
    throw std::invalid_argument("make_seminorms: entry has no series data");
  auto coeff = entry.fn.series_coeff;
  return PowerSeriesSeminorms([coeff](int r) { return std::abs(coeff(r)); });
}

PowerSeriesSeminorms make_delta_series_seminorms(double delta, int r_cap) {
  if (!(delta > 1.0)) throw std::invalid_argument("delta must exceed 1");
  PowerSeriesSeminorms sums([delta](int r) { return r >= 1 ? std::pow(r, -delta) : 0.0; },
                            r_cap);
  const int max_u = static_cast<int>(std::ceil(delta)) - 2;
  sums.restrict_feasible_u(max_u, [delta](int u, int R) {
    // t_r <= r^(u-1-delta), an integral-test tail for u < delta
    return std::pow(static_cast<double>(R), u - delta) / (delta - u);
  });
  return sums;
}

SmoothnessData smoothness_data(const CorpusEntry& entry, int r, double lambda,
                               int variation_depth) {
  if (r < 1 || r + 1 > entry.data_order)
    throw std::invalid_argument("smoothness_data: r outside the entry's data range");
  SmoothnessData d;
  d.r = r;
  d.lambda = lambda;
  d.deriv_at_zero.resize(static_cast<std::size_t>(r));
  for (int s = 0; s < r; ++s) d.deriv_at_zero[static_cast<std::size_t>(s)] = entry.deriv_at_zero(s);
  d.integral_deriv.resize(static_cast<std::size_t>(r) + 1);
  for (int s = 0; s <= r; ++s) d.integral_deriv[static_cast<std::size_t>(s)] = entry.integral_deriv(s);
  d.integral_abs_r = entry.integral_abs_deriv(r);
  d.vlambda.resize(static_cast<std::size_t>(r) + 1);
  if (lambda == 1.0) {
    for (int s = 0; s <= r; ++s)
      d.vlambda[static_cast<std::size_t>(s)] = entry.integral_abs_deriv(s + 1);
    d.v_is_estimate = false;
  } else {
    for (int s = 0; s <= r; ++s) {
      const auto spec = derivative_spec(entry, s);
      d.vlambda[static_cast<std::size_t>(s)] = fractional_variation(spec, lambda, variation_depth);
    }
    d.v_is_estimate = true;
  }
  return d;
}

FunctionSpec derivative_spec(const CorpusEntry& entry, int s) {
  if (!entry.fn.has_derivative(s))
    throw std::invalid_argument("derivative_spec: derivative order not available");
  FunctionSpec spec;
  spec.name = entry.fn.name + "^(" + std::to_string(s) + ")";
  spec.params = entry.fn.params;
  spec.f = entry.fn.derivatives[static_cast<std::size_t>(s)];
  const int avail = static_cast<int>(entry.fn.derivatives.size()) - s;
  spec.derivatives.reserve(static_cast<std::size_t>(avail));
  for (int j = 0; j < avail; ++j)
    spec.derivatives.push_back(entry.fn.derivatives[static_cast<std::size_t>(s + j)]);
  return spec;
}

}  // namespace walshdecay
