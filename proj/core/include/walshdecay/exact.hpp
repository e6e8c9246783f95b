#pragma once

#include <complex>
#include <memory>
#include <unordered_map>
#include <vector>

#include "walshdecay/basekit.hpp"
#include "walshdecay/oracle.hpp"
#include "walshdecay/walsh.hpp"

namespace walshdecay {

/// Memoized evaluator for the special Walsh coefficients chi (monomials x^r),
/// beta (scaled Bernoulli polynomials b_r) and gamma (the periodized kernel
/// b_tilde_r(x-y)), all driven by the Walsh series of J_k.
///
/// The infinite (c,theta)-sums in the recursions are truncated adaptively:
/// every omitted branch is charged against an error budget, so results are
/// within `tol` of the exact values. The c-sum is never extended past
/// C(tol) = ceil(log_b(1/tol)) + 2.
///
/// Results are deterministic given (base, tol). The memo table is per
/// instance; use one engine per worker for concurrent sweeps.
class CoefficientEngine {
 public:
  explicit CoefficientEngine(int base, double tol = 1e-12);
  ~CoefficientEngine();
  CoefficientEngine(const CoefficientEngine&) = delete;
  CoefficientEngine& operator=(const CoefficientEngine&) = delete;

  int base() const { return base_; }
  double tol() const { return tol_; }

  /// chi_{r,v} = int_0^1 x^r conj(wal_k(x)) dx, within eps (default tol).
  Complex chi(int r, const IndexDecomposition& k, double eps = 0.0) const;
  /// beta_{r,v} = int_0^1 b_r(x) conj(wal_k(x)) dx, r >= 1.
  Complex beta(int r, const IndexDecomposition& k, double eps = 0.0) const;
  /// gamma_r(k,l) = int int b_tilde_r(x-y) conj(wal_k(x)) wal_l(y), r >= 2.
  Complex gamma(int r, const IndexDecomposition& k, const IndexDecomposition& l,
                double eps = 0.0) const;

 private:
  struct Impl;
  Complex chi_rec(int r, const std::vector<DigitTerm>& d, double eps) const;
  Complex beta_rec(int r, const std::vector<DigitTerm>& d, double eps) const;
  Complex gamma_eps(int r, const IndexDecomposition& k, const IndexDecomposition& l,
                    double eps) const;

  int base_;
  double tol_;
  int c_cap_;
  double inv_two_sin_;
  std::vector<Complex> inv_one_minus_omega_neg_;  // (1 - omega^-kappa)^-1
  std::vector<Complex> half_plus_inv_;            // 1/2 + (omega^-kappa - 1)^-1
  std::vector<Complex> inv_omega_minus_one_;      // (omega^theta - 1)^-1
  std::unique_ptr<Impl> impl_;
};

/// chi within tol, through a per-thread engine cache keyed on (base, tol).
Complex chi(int r, const IndexDecomposition& k, double tol = 1e-12);

/// Closed form chi_{r,r} (v = r, derived from k):
/// (-1)^r r! b^(-a_1-...-a_r) prod_w (1 - omega^-kappa_w)^-1.
Complex chi_closed_rr(const IndexDecomposition& k);

/// Closed form chi_{r,r-1} with r = v + 1 derived from k.
Complex chi_closed_r_rm1(const IndexDecomposition& k);

/// beta within tol (per-thread engine cache).
Complex beta(int r, const IndexDecomposition& k, double tol = 1e-12);

/// Closed form beta_{r,r} = (-1)^r b^(-a_1-...-a_r) prod_s (1 - omega^-kappa_s)^-1.
Complex beta_closed_rr(const IndexDecomposition& k);

/// gamma_2(k,l) through its closed-form case table.
Complex gamma2(const IndexDecomposition& k, const IndexDecomposition& l);

/// Structural zero test for gamma_r(k,l): true only when one of the
/// digit-suffix mismatch conditions guarantees gamma_r(k,l) = 0.
bool gamma_vanishes(int r, const IndexDecomposition& k, const IndexDecomposition& l);

/// gamma_r within tol (per-thread engine cache), r >= 2.
Complex gamma(int r, const IndexDecomposition& k, const IndexDecomposition& l,
              double tol = 1e-12);

/// hat{f}(k) = sum_{r>=v} f_r chi_{r,v} truncated at `truncation`, with the
/// reported error covering both the series tail and the chi tolerance.
CoefficientRecord power_series_coeff(const FunctionSpec& f, const IndexDecomposition& k,
                                     int truncation, double tol = 1e-12);

}  // namespace walshdecay
