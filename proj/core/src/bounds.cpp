#include "walshdecay/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "walshdecay/bernoulli.hpp"

namespace walshdecay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double two_sin_inv(int b) { return 1.0 / (2.0 * std::sin(std::numbers::pi / b)); }

// 1 + 1/b + 1/(b(b+1))
double propagation_factor(int b) {
  const double bd = b;
  return 1.0 + 1.0 / bd + 1.0 / (bd * (bd + 1.0));
}

// 3 + 2/b + (2b+1)/(b-1)
double row_sum_constant(int b) {
  const double bd = b;
  return 3.0 + 2.0 / bd + (2.0 * bd + 1.0) / (bd - 1.0);
}

double bpow(int b, double e) { return std::pow(static_cast<double>(b), -e); }

double require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " is not finite");
  return x;
}

}  // namespace

double bound_monomial(int r, const IndexDecomposition& k) {
  if (r < 1) throw std::invalid_argument("bound_monomial: r must be >= 1");
  const int v = k.digit_count();
  if (v > r) return 0.0;  // chi_{r,v} = 0 there
  const int b = k.base();
  const double s = two_sin_inv(b);
  const double pf = propagation_factor(b);
  double best = kInf;
  double fact_ratio = 1.0 / (r + 1);  // r!/(r-u+1)! at u = 0
  for (int u = 0; u <= v; ++u) {
    if (u > 0) fact_ratio *= (r - u + 2);  // advance to r!/(r-u+1)!
    const double val = bpow(b, static_cast<double>(mu(u, k))) * fact_ratio *
                       (u >= 1 ? 3.0 : 1.0) * std::pow(s, u) *
                       std::pow(pf, std::max(0, u - 1));
    best = std::min(best, val);
  }
  return best;
}

PowerSeriesSeminorms::PowerSeriesSeminorms(std::function<double(int)> abs_coeff, int r_cap)
    : abs_coeff_(std::move(abs_coeff)), r_cap_(r_cap) {
  if (!abs_coeff_) throw std::invalid_argument("PowerSeriesSeminorms: coefficient function required");
}

void PowerSeriesSeminorms::restrict_feasible_u(int max_feasible_u,
                                               std::function<double(int, int)> tail_bound) {
  max_feasible_u_ = max_feasible_u;
  tail_bound_ = std::move(tail_bound);
}

double PowerSeriesSeminorms::tail_sum(int u, int v) const {
  if (u < 0 || v < 0) throw std::invalid_argument("tail_sum: negative order");
  if (max_feasible_u_ >= 0 && u > max_feasible_u_) return kInf;
  // terms t_r = r! |f_r| / (r-u+1)!, r >= max(v, u-1) so the factorial is defined
  const int start = std::max(v, std::max(u - 1, 0));
  constexpr int kWindow = 16;
  double ratios[kWindow];
  for (double& x : ratios) x = 0.0;
  double sum = 0.0;
  double prev = -1.0;
  double last = 0.0;
  int zero_run = 0;
  int steps = 0;
  for (int r = start; r <= r_cap_; ++r, ++steps) {
    double fac = 1.0;  // r!/(r-u+1)!
    for (int j = r - u + 2; j <= r; ++j) fac *= j;
    const double term = fac * std::abs(abs_coeff_(r));
    sum += term;
    if (term == 0.0) {
      if (++zero_run >= 8) return sum;  // finite (polynomial / truncated) series
    } else {
      zero_run = 0;
    }
    ratios[steps % kWindow] = (prev > 0.0) ? term / prev : (term > 0.0 ? 2.0 : 0.0);
    prev = term;
    last = term;
  }
  if (max_feasible_u_ >= 0 && tail_bound_) return sum + tail_bound_(u, r_cap_);
  if (last == 0.0) return sum;
  // Certify the remainder geometrically from the observed ratio window. The
  // per-step ratio (r+1)/(r-u+2) decreases in r, so for coefficients whose
  // consecutive magnitude ratios are eventually non-increasing the window
  // maximum dominates all later ratios.
  double rho = 0.0;
  for (double x : ratios) rho = std::max(rho, x);
  if (rho < 0.999) return sum + last * rho / (1.0 - rho);
  return kInf;
}

double bound_power_series(const PowerSeriesSeminorms& sums, const IndexDecomposition& k) {
  const int v = k.digit_count();
  if (v == 0) throw std::domain_error("bound_power_series: k must be >= 1");
  const int b = k.base();
  const double s = two_sin_inv(b);
  const double pf = propagation_factor(b);
  double best = kInf;
  for (int u = 0; u <= v; ++u) {
    const double su = sums.tail_sum(u, v);
    if (!std::isfinite(su)) continue;
    const double val = bpow(b, static_cast<double>(mu(u, k))) * (u >= 1 ? 3.0 : 1.0) *
                       std::pow(s, u) * std::pow(pf, std::max(0, u - 1)) * su;
    best = std::min(best, val);
  }
  if (!std::isfinite(best)) throw std::runtime_error("bound_power_series: no feasible u");
  return best;
}

double seminorm(const PowerSeriesSeminorms& sums, int v) { return sums.tail_sum(v, v); }

double bound_holder(double lambda, double vlambda, const IndexDecomposition& k) {
  if (!(lambda > 0.0) || lambda > 1.0) throw std::domain_error("bound_holder: lambda outside (0,1]");
  if (vlambda < 0.0) throw std::invalid_argument("bound_holder: negative variation");
  if (k.is_zero()) throw std::domain_error("bound_holder: k must be >= 1");
  const int b = k.base();
  return std::pow(b - 1.0, 1.0 + lambda) * bpow(b, lambda * k.leading_position()) * vlambda;
}

namespace {

double vlambda_at(const SmoothnessData& d, int s, const char* ctx) {
  if (s < 0 || s >= static_cast<int>(d.vlambda.size()) ||
      !std::isfinite(d.vlambda[static_cast<std::size_t>(s)]))
    throw std::invalid_argument(std::string(ctx) + ": missing V_lambda data");
  return d.vlambda[static_cast<std::size_t>(s)];
}

double integral_at(const SmoothnessData& d, int s, const char* ctx) {
  if (s < 0 || s >= static_cast<int>(d.integral_deriv.size()) ||
      !std::isfinite(d.integral_deriv[static_cast<std::size_t>(s)]))
    throw std::invalid_argument(std::string(ctx) + ": missing derivative mean");
  return d.integral_deriv[static_cast<std::size_t>(s)];
}

}  // namespace

BoundRecord bound_cr(const SmoothnessData& data, const IndexDecomposition& k) {
  const int r = data.r;
  if (r < 1) throw std::invalid_argument("bound_cr: r must be >= 1");
  if (k.is_zero()) throw std::domain_error("bound_cr: k must be >= 1");
  const int b = k.base();
  const int v = k.digit_count();
  const double lam = data.lambda;
  const double s = two_sin_inv(b);
  const double pf = propagation_factor(b);
  const double bm1 = std::pow(b - 1.0, 1.0 + lam);

  BoundRecord rec;
  rec.theorem = "theorem2";
  rec.estimated_inputs = data.v_is_estimate;
  if (v > r) {
    const double vr = vlambda_at(data, r, "bound_cr");
    rec.exponent = static_cast<double>(mu(r, k)) + lam * k.digit(r).position;  // a_{r+1}
    rec.constant = vr * bm1 * (1.0 + 2.0 * bpow(b, lam)) * std::pow(s, r) * std::pow(pf, r - 1);
  } else if (v == r) {
    const double vr = vlambda_at(data, r, "bound_cr");
    rec.exponent = static_cast<double>(mu(r, k));
    rec.constant = std::pow(s, r) * std::pow(pf, r - 1) *
                   (std::abs(integral_at(data, r, "bound_cr")) +
                    2.0 * bm1 * bpow(b, lam * k.digit(r - 1).position) * vr);
  } else {
    // v < r
    if (static_cast<int>(data.deriv_at_zero.size()) < r)
      throw std::invalid_argument("bound_cr: missing derivative values at 0");
    double tail = 0.0;
    double fact = 1.0;  // (s - v + 1)!
    for (int sidx = v; sidx <= r - 1; ++sidx) {
      fact *= (sidx - v + 1);
      tail += std::abs(data.deriv_at_zero[static_cast<std::size_t>(sidx)]) / fact;
    }
    const double vv = vlambda_at(data, v, "bound_cr");
    rec.exponent = static_cast<double>(mu(r, k));
    rec.constant = std::pow(s, v) * std::pow(pf, v - 1) *
                   (3.0 * tail + std::abs(integral_at(data, v, "bound_cr")) +
                    2.0 * bm1 * bpow(b, lam * k.digit(v - 1).position) * vv);
  }
  rec.bound = bpow(b, rec.exponent) * rec.constant;
  return rec;
}

double bound_bernoulli(int r, const IndexDecomposition& k) {
  if (r < 1) throw std::invalid_argument("bound_bernoulli: r must be >= 1");
  if (k.is_zero()) return 0.0;  // beta_{r,0} = 0
  const int b = k.base();
  if (r == 1)  // |beta_{1,1}| envelope; the lemma starts at r = 2
    return bpow(b, k.leading_position()) * two_sin_inv(b);
  return bpow(b, static_cast<double>(mu_per(r, k))) * std::pow(two_sin_inv(b), r) *
         std::pow(propagation_factor(b), r - 2);
}

double bound_gamma(int r, const IndexDecomposition& k, const IndexDecomposition& l) {
  if (r < 2) throw std::invalid_argument("bound_gamma: r must be >= 2");
  if (k.base() != l.base()) throw std::invalid_argument("bound_gamma: mixed bases");
  if (k.is_zero() || l.is_zero()) return 0.0;  // gamma vanishes there
  const int b = k.base();
  return 2.0 * bpow(b, static_cast<double>(mu_per_pair(r, k, l))) *
         std::pow(two_sin_inv(b), r) * std::pow(propagation_factor(b), r - 2);
}

double gamma_row_sum_bound(int r, const IndexDecomposition& m) {
  if (r <= 1) throw std::invalid_argument("gamma_row_sum_bound: r must be > 1");
  const int b = m.base();
  return bpow(b, static_cast<double>(mu_per(r, m))) * row_sum_constant(b);
}

BoundRecord bound_sobolev(const SmoothnessData& data, const IndexDecomposition& k) {
  const int r = data.r;
  if (r <= 1) throw std::invalid_argument("bound_sobolev: r must be > 1");
  if (k.is_zero()) throw std::domain_error("bound_sobolev: k must be >= 1");
  const int b = k.base();
  const int v = k.digit_count();
  const double s = two_sin_inv(b);
  const double pf = propagation_factor(b);

  double sum = 0.0;
  for (int sidx = v; sidx <= r; ++sidx) {  // empty when v > r
    sum += std::abs(integral_at(data, sidx, "bound_sobolev")) *
           bpow(b, static_cast<double>(mu_per(sidx, k))) * std::pow(s, sidx) *
           std::pow(pf, std::max(0, sidx - 2));
  }
  const double tail = require_finite(data.integral_abs_r, "bound_sobolev: integral_abs_r") *
                      2.0 * bpow(b, static_cast<double>(mu_per(r, k))) * std::pow(s, r) *
                      std::pow(pf, r - 2) * row_sum_constant(b);

  BoundRecord rec;
  rec.theorem = "theorem3";
  rec.estimated_inputs = data.v_is_estimate;
  rec.exponent = static_cast<double>(mu_per(r, k));
  rec.constant = (sum + tail) * std::pow(static_cast<double>(b), rec.exponent);
  rec.bound = bpow(b, rec.exponent) * rec.constant;
  return rec;
}

double bound_sobolev_periodic(double int_abs_fr, int r, const IndexDecomposition& k) {
  if (r <= 1) throw std::invalid_argument("bound_sobolev_periodic: r must be > 1");
  if (k.is_zero()) throw std::domain_error("bound_sobolev_periodic: k must be >= 1");
  const int b = k.base();
  return require_finite(int_abs_fr, "bound_sobolev_periodic: int_abs_fr") * 2.0 *
         bpow(b, static_cast<double>(mu_per(r, k))) * std::pow(two_sin_inv(b), r) *
         std::pow(propagation_factor(b), r - 2) *
         (3.5 + 2.0 / b + (2.0 * b + 1.0) / (b - 1.0));
}

double kernel_sobolev(int r, double x, double y) {
  if (r < 1) throw std::invalid_argument("kernel_sobolev: r must be >= 1");
  double acc = 0.0;
  for (int s = 0; s <= r; ++s) acc += eval_b(s, x) * eval_b(s, y);
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  return acc - sign * eval_b_tilde(2 * r, x - y);
}

double kernel_periodic(int r, double x, double y) {
  if (r < 1) throw std::invalid_argument("kernel_periodic: r must be >= 1");
  const double sign = (r % 2 == 0) ? -1.0 : 1.0;  // (-1)^(r+1)
  return sign * eval_b_tilde(2 * r, x - y);
}

}  // namespace walshdecay
