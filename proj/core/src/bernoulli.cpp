#include "walshdecay/bernoulli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace walshdecay {

namespace {

// Bernoulli numbers B_0..B_n (B_1 = -1/2) via the defining recurrence.
std::vector<double> bernoulli_numbers(int n) {
  std::vector<double> B(static_cast<std::size_t>(n) + 1, 0.0);
  B[0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    double c = 1.0;  // C(m+1, j), starting at j = 0
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      acc += c * B[static_cast<std::size_t>(j)];
      c = c * (m + 1 - j) / (j + 1);
    }
    B[static_cast<std::size_t>(m)] = -acc / (m + 1);
  }
  return B;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

BernoulliPoly::BernoulliPoly(int degree) : degree_(degree) {
  if (degree < 0 || degree > kMaxBernoulliDegree)
    throw std::invalid_argument("BernoulliPoly: degree out of range");
  const auto B = bernoulli_numbers(degree);
  coeffs_.resize(static_cast<std::size_t>(degree) + 1, 0.0);
  // B_r(x) = sum_j C(r,j) B_j x^(r-j)
  for (int j = 0; j <= degree; ++j)
    coeffs_[static_cast<std::size_t>(degree - j)] = binomial(degree, j) * B[static_cast<std::size_t>(j)];
}

std::vector<double> BernoulliPoly::scaled_coefficients() const {
  double fact = 1.0;
  for (int i = 2; i <= degree_; ++i) fact *= i;
  std::vector<double> out = coeffs_;
  for (auto& c : out) c /= fact;
  return out;
}

double BernoulliPoly::eval(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

double BernoulliPoly::eval_scaled(double x) const {
  double fact = 1.0;
  for (int i = 2; i <= degree_; ++i) fact *= i;
  return eval(x) / fact;
}

const BernoulliPoly& bernoulli(int r) {
  if (r < 0 || r > kMaxBernoulliDegree)
    throw std::invalid_argument("bernoulli: degree out of range");
  static const auto* cache = [] {
    auto* v = new std::vector<BernoulliPoly>;
    v->reserve(kMaxBernoulliDegree + 1);
    for (int i = 0; i <= kMaxBernoulliDegree; ++i) v->emplace_back(i);
    return v;
  }();
  return (*cache)[static_cast<std::size_t>(r)];
}

double eval_b(int r, double x) { return bernoulli(r).eval_scaled(x); }

double eval_b_tilde(int r, double t) {
  if (r < 1) throw std::invalid_argument("eval_b_tilde: r must be >= 1");
  double frac = t - std::floor(t);
  if (r == 1) {
    if (frac == 0.0) return 0.0;  // Fourier midpoint value at the jump
    return frac - 0.5;
  }
  return eval_b(r, frac);
}

double b_abs_envelope(int r) {
  if (r <= 1) return 0.5;
  // |b_tilde_r| <= 2 zeta(r) / (2 pi)^r <= 2 zeta(2) / (2 pi)^r
  return 3.3 / std::pow(2.0 * std::numbers::pi, r);
}

double integral_abs_b(int r) {
  if (r < 0 || r > kMaxBernoulliDegree) throw std::invalid_argument("integral_abs_b: r out of range");
  if (r == 0) return 1.0;
  const auto& poly = bernoulli(r);
  // locate the sign changes of b_r on [0,1]
  const int samples = 1 << 12;
  std::vector<double> cuts{0.0};
  double xprev = 0.0;
  double vprev = poly.eval(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double x = static_cast<double>(i) / samples;
    const double v = poly.eval(x);
    if ((vprev < 0.0 && v > 0.0) || (vprev > 0.0 && v < 0.0)) {
      double lo = xprev, hi = x;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double vm = poly.eval(mid);
        if ((vm < 0.0) == (vprev < 0.0)) lo = mid; else hi = mid;
      }
      cuts.push_back(0.5 * (lo + hi));
    } else if (v == 0.0 && x < 1.0) {
      cuts.push_back(x);
    }
    xprev = x;
    vprev = v;
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  // piecewise-exact: int b_r = b_{r+1} differences, signs from midpoints
  const auto& anti = bernoulli(r + 1);
  double fact_r1 = 1.0;
  for (int i = 2; i <= r + 1; ++i) fact_r1 *= i;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    if (hi <= lo) continue;
    const double piece = (anti.eval(hi) - anti.eval(lo)) / fact_r1;
    const double sign = poly.eval(0.5 * (lo + hi)) < 0.0 ? -1.0 : 1.0;
    acc += sign * piece;
  }
  return acc;
}

}  // namespace walshdecay
