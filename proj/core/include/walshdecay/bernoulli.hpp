#pragma once

#include <vector>

namespace walshdecay {

/// Bernoulli polynomial B_r and its scaled form b_r = B_r / r!.
/// b_r' = b_{r-1} and int_0^1 b_r = 0 for r >= 1.
class BernoulliPoly {
 public:
  explicit BernoulliPoly(int degree);

  int degree() const { return degree_; }
  /// Coefficients of B_r, ascending powers.
  const std::vector<double>& coefficients() const { return coeffs_; }
  /// Coefficients of b_r = B_r / r!, ascending powers.
  std::vector<double> scaled_coefficients() const;

  double eval(double x) const;         // B_r(x)
  double eval_scaled(double x) const;  // b_r(x)

 private:
  int degree_;
  std::vector<double> coeffs_;
};

inline constexpr int kMaxBernoulliDegree = 24;

/// Cached polynomial, r <= kMaxBernoulliDegree.
const BernoulliPoly& bernoulli(int r);

/// b_r(x) for x in [0,1].
double eval_b(int r, double x);

/// Periodic extension: b_tilde_r(t) = b_r(t mod 1). Single-valued for r >= 2;
/// for r = 1 the Fourier midpoint value 0 is taken at integers.
double eval_b_tilde(int r, double t);

/// max over [0,1] of |b_r|; a valid coarse envelope used for truncation
/// budgets (2 zeta(r) / (2 pi)^r for r >= 2).
double b_abs_envelope(int r);

/// int_0^1 |b_r|, computed exactly from the sign changes of b_r.
double integral_abs_b(int r);

}  // namespace walshdecay
