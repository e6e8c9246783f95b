#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "walshdecay/basekit.hpp"

namespace walshdecay {

/// Analytic inputs for the smoothness-based bounds on a fixed function:
/// derivative values at 0, derivative means, and variation data.
/// vlambda[s] = V_lambda(f^(s)); entries may be NaN when unknown.
struct SmoothnessData {
  int r = 1;
  double lambda = 1.0;
  std::vector<double> deriv_at_zero;   // f^(s)(0), s = 0..r-1
  std::vector<double> integral_deriv;  // int_0^1 f^(s), s = 0..r
  double integral_abs_r = 0.0;         // int_0^1 |f^(r)|
  std::vector<double> vlambda;         // V_lambda(f^(s)), s = 0..r
  bool v_is_estimate = false;          // vlambda holds certified lower estimates
};

/// One evaluated bound, factored as bound = b^-exponent * constant.
struct BoundRecord {
  std::string theorem;
  double bound = 0.0;
  double exponent = 0.0;  // the mu part (plus any lambda*a term)
  double constant = 0.0;
  bool estimated_inputs = false;
};

/// Bound on |chi_{r,v}|: min over u <= v of
/// b^-mu_u(k) r!/(r-u+1)! 3^min(1,u) (2 sin pi/b)^-u (1+1/b+1/(b(b+1)))^max(0,u-1);
/// zero when v > r.
double bound_monomial(int r, const IndexDecomposition& k);

/// Tail sums S_u(v) = sum_{r>=v} r! |f_r| / (r-u+1)! for a power series,
/// with certified geometric tail detection. Infeasible sums are +infinity.
class PowerSeriesSeminorms {
 public:
  PowerSeriesSeminorms(std::function<double(int)> abs_coeff, int r_cap = 400);
  /// Marks sums with u > max_feasible_u as infinite (used for series whose
  /// coefficients decay too slowly for the factorial ratio to be summable).
  void restrict_feasible_u(int max_feasible_u,
                           std::function<double(int, int)> tail_bound = {});

  double tail_sum(int u, int v) const;  // S_u(v)
  double seminorm(int v) const { return tail_sum(v, v); }

 private:
  std::function<double(int)> abs_coeff_;
  std::function<double(int, int)> tail_bound_;
  int r_cap_;
  int max_feasible_u_ = -1;  // -1: detect numerically
};

/// Bound on |hat f(k)| for f given by its power series: min over feasible u of
/// b^-mu_u(k) 3^min(1,u) (2 sin pi/b)^-u (1+...)^max(0,u-1) S_u(v).
/// Throws std::runtime_error when no u is feasible.
double bound_power_series(const PowerSeriesSeminorms& sums, const IndexDecomposition& k);

/// ||f^(v-1)|| = sum_{r>=v} r! |f_r| / (r-v+1)!.
double seminorm(const PowerSeriesSeminorms& sums, int v);

/// Fine-type variation bound: (b-1)^(1+lambda) b^(-lambda a_1) V_lambda(f), k >= 1.
double bound_holder(double lambda, double vlambda, const IndexDecomposition& k);

/// Smoothness-r bound with the three cases v > r, v = r, v < r.
BoundRecord bound_cr(const SmoothnessData& data, const IndexDecomposition& k);

/// Bound on |beta_{r,v}|: b^-mu_{r,per}(k) (2 sin pi/b)^-r (1+...)^(r-2) for
/// r >= 2. For r = 1 the |beta_{1,1}| envelope b^-a_1 (2 sin pi/b)^-1 is used.
double bound_bernoulli(int r, const IndexDecomposition& k);

/// Bound on |gamma_r(k,l)|: 2 b^-mu_{r,per}(k,l) (2 sin pi/b)^-r (1+...)^(r-2).
/// Zero (the exact value) when k or l is zero.
double bound_gamma(int r, const IndexDecomposition& k, const IndexDecomposition& l);

/// Row-sum bound: sum over k with gamma_r(m,k) != 0 of b^-mu_{r,per}(m,k)
/// is at most b^-mu_{r,per}(m) (3 + 2/b + (2b+1)/(b-1)).
double gamma_row_sum_bound(int r, const IndexDecomposition& m);

/// Sobolev-space bound (sum over s = v..r plus the integral term).
BoundRecord bound_sobolev(const SmoothnessData& data, const IndexDecomposition& k);

/// Periodic-space bound; membership (zero lower derivative means) is
/// asserted by the caller.
double bound_sobolev_periodic(double int_abs_fr, int r, const IndexDecomposition& k);

/// Reproducing kernels: K_r(x,y) = sum_{s<=r} b_s(x) b_s(y) - (-1)^r b~_{2r}(x-y)
/// and its periodic part K_{r,per}(x,y) = (-1)^(r+1) b~_{2r}(x-y).
double kernel_sobolev(int r, double x, double y);
double kernel_periodic(int r, double x, double y);

}  // namespace walshdecay
