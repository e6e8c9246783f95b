#include "walshdecay/exact.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "walshdecay/bernoulli.hpp"

namespace walshdecay {

namespace {

using Key = std::vector<int>;

struct KeyHash {
  std::size_t operator()(const Key& key) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : key) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct Entry {
  Complex value;
  double eps;
};

Key make_key(int r, const std::vector<DigitTerm>& d) {
  Key key;
  key.reserve(1 + 2 * d.size());
  key.push_back(r);
  for (const auto& t : d) {
    key.push_back(t.position);
    key.push_back(t.digit);
  }
  return key;
}

Key make_pair_key(int r, const IndexDecomposition& k, const IndexDecomposition& l) {
  Key key;
  key.reserve(2 + 2 * (k.digits().size() + l.digits().size()));
  key.push_back(r);
  for (const auto& t : k.digits()) {
    key.push_back(t.position);
    key.push_back(t.digit);
  }
  key.push_back(-1);
  for (const auto& t : l.digits()) {
    key.push_back(t.position);
    key.push_back(t.digit);
  }
  return key;
}

std::vector<DigitTerm> tail_of(const std::vector<DigitTerm>& d) {
  return {d.begin() + 1, d.end()};
}

std::vector<DigitTerm> prepend(const std::vector<DigitTerm>& d, int position, int digit) {
  std::vector<DigitTerm> out;
  out.reserve(d.size() + 1);
  out.push_back({position, digit});
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

}  // namespace

struct CoefficientEngine::Impl {
  mutable std::unordered_map<Key, Entry, KeyHash> chi_memo;
  mutable std::unordered_map<Key, Entry, KeyHash> beta_memo;
  mutable std::unordered_map<Key, Entry, KeyHash> gamma_memo;
};

CoefficientEngine::CoefficientEngine(int base, double tol)
    : base_(base), tol_(tol), impl_(new Impl) {
  if (base < 2) throw std::invalid_argument("CoefficientEngine: base must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("CoefficientEngine: tol must be positive");
  c_cap_ = static_cast<int>(std::ceil(std::log(1.0 / tol) / std::log(static_cast<double>(base)))) + 2;
  inv_two_sin_ = 1.0 / (2.0 * std::sin(std::numbers::pi / base));
  inv_one_minus_omega_neg_.resize(static_cast<std::size_t>(base));
  half_plus_inv_.resize(static_cast<std::size_t>(base));
  inv_omega_minus_one_.resize(static_cast<std::size_t>(base));
  for (int kappa = 1; kappa < base; ++kappa) {
    const Complex wneg = unit_root(base, -kappa);
    const Complex wpos = unit_root(base, kappa);
    inv_one_minus_omega_neg_[static_cast<std::size_t>(kappa)] = 1.0 / (1.0 - wneg);
    half_plus_inv_[static_cast<std::size_t>(kappa)] = 0.5 + 1.0 / (wneg - 1.0);
    inv_omega_minus_one_[static_cast<std::size_t>(kappa)] = 1.0 / (wpos - 1.0);
  }
}

CoefficientEngine::~CoefficientEngine() = default;

Complex CoefficientEngine::chi(int r, const IndexDecomposition& k, double eps) const {
  if (r < 0) throw std::invalid_argument("chi: r must be >= 0");
  if (k.base() != base_) throw std::invalid_argument("chi: base mismatch");
  return chi_rec(r, k.digits(), std::max(eps, tol_));
}

Complex CoefficientEngine::chi_rec(int r, const std::vector<DigitTerm>& d, double eps) const {
  const int v = static_cast<int>(d.size());
  if (v == 0) return 1.0 / (r + 1);
  if (v > r) return 0.0;
  const int a1 = d.front().position;
  const int kappa1 = d.front().digit;
  if (r == 1)  // chi_{1,1}
    return -std::pow(static_cast<double>(base_), -a1) *
           inv_one_minus_omega_neg_[static_cast<std::size_t>(kappa1)];

  const Key key = make_key(r, d);
  auto it = impl_->chi_memo.find(key);
  if (it != impl_->chi_memo.end() && it->second.eps <= eps) return it->second.value;

  const double A = std::pow(static_cast<double>(base_), -a1);
  if (A == 0.0) return 0.0;  // value underflows with it
  const double rr = static_cast<double>(r);
  // |chi_{r-1,.}| <= min(1/r, 3 b^-a1' /(2 sin pi/b)) by the decay lemma
  const auto child_bound = [this, rr](int lead) {
    return std::min(1.0 / rr, 3.0 * inv_two_sin_ *
                                  std::pow(static_cast<double>(base_), -lead));
  };
  Complex total = 0.0;

  {
    const Complex c1 = -rr * A * inv_one_minus_omega_neg_[static_cast<std::size_t>(kappa1)];
    const double eps1 = eps / (4.0 * std::abs(c1));
    const double ub = v >= 2 ? child_bound(d[1].position) : 1.0 / rr;
    if (ub > eps1) total += c1 * chi_rec(r - 1, tail_of(d), eps1);
  }
  if (v <= r - 1) {
    const Complex c2 = -rr * A * half_plus_inv_[static_cast<std::size_t>(kappa1)];
    const double ac2 = std::abs(c2);
    if (ac2 > 0.0) {
      const double eps2 = eps / (4.0 * ac2);
      if (child_bound(a1) > eps2) total += c2 * chi_rec(r - 1, d, eps2);
    }
  }
  if (v + 1 <= r - 1) {
    double bc = 1.0;
    for (int c = 1; c <= c_cap_; ++c) {
      bc /= base_;
      if (A * inv_two_sin_ * bc * base_ <= eps / 8.0) break;  // geometric tail
      const double ub = child_bound(a1 + c);
      for (int theta = 1; theta < base_; ++theta) {
        const Complex c3 = -rr * A * bc * inv_omega_minus_one_[static_cast<std::size_t>(theta)];
        const double eps_child = (eps / 8.0) * bc / std::abs(c3);
        if (ub <= eps_child) continue;  // budget covers dropping it
        total += c3 * chi_rec(r - 1, prepend(d, a1 + c, theta), eps_child);
      }
    }
  }
  impl_->chi_memo[key] = {total, eps};
  return total;
}

Complex CoefficientEngine::beta(int r, const IndexDecomposition& k, double eps) const {
  if (r < 1) throw std::invalid_argument("beta: r must be >= 1");
  if (k.base() != base_) throw std::invalid_argument("beta: base mismatch");
  return beta_rec(r, k.digits(), std::max(eps, tol_));
}

Complex CoefficientEngine::beta_rec(int r, const std::vector<DigitTerm>& d, double eps) const {
  const int v = static_cast<int>(d.size());
  if (v == 0) return 0.0;  // beta_{r,0} = 0 for r >= 1
  if (v > r) return 0.0;
  const int a1 = d.front().position;
  const int kappa1 = d.front().digit;
  if (r == 1)  // beta_{1,1}
    return -std::pow(static_cast<double>(base_), -a1) *
           inv_one_minus_omega_neg_[static_cast<std::size_t>(kappa1)];

  const Key key = make_key(r, d);
  auto it = impl_->beta_memo.find(key);
  if (it != impl_->beta_memo.end() && it->second.eps <= eps) return it->second.value;

  const double A = std::pow(static_cast<double>(base_), -a1);
  if (A == 0.0) return 0.0;
  const double envelope = b_abs_envelope(r - 1);
  const double decay = std::pow(inv_two_sin_, r - 1) *
                       std::pow(1.0 + 1.0 / base_ + 1.0 / (base_ * (base_ + 1.0)),
                                std::max(0, r - 3));
  // |beta_{r-1,.}| <= min(max|b_{r-1}|, s^(r-1) pf^(r-3) b^-lead)
  const auto child_bound = [this, envelope, decay](int lead) {
    return std::min(envelope, decay * std::pow(static_cast<double>(base_), -lead));
  };
  Complex total = 0.0;

  {
    const Complex c1 = -A * inv_one_minus_omega_neg_[static_cast<std::size_t>(kappa1)];
    const double eps1 = eps / (4.0 * std::abs(c1));
    const double ub = v >= 2 ? child_bound(d[1].position) : envelope;
    if (ub > eps1) total += c1 * beta_rec(r - 1, tail_of(d), eps1);
  }
  if (v <= r - 1) {
    const Complex c2 = -A * half_plus_inv_[static_cast<std::size_t>(kappa1)];
    const double ac2 = std::abs(c2);
    if (ac2 > 0.0) {
      const double eps2 = eps / (4.0 * ac2);
      if (child_bound(a1) > eps2) total += c2 * beta_rec(r - 1, d, eps2);
    }
  }
  if (v + 1 <= r - 1) {
    double bc = 1.0;
    for (int c = 1; c <= c_cap_; ++c) {
      bc /= base_;
      if (A * inv_two_sin_ * envelope * bc * base_ <= eps / 8.0) break;
      const double ub = child_bound(a1 + c);
      for (int theta = 1; theta < base_; ++theta) {
        const Complex c3 = -A * bc * inv_omega_minus_one_[static_cast<std::size_t>(theta)];
        const double eps_child = (eps / 8.0) * bc / std::abs(c3);
        if (ub <= eps_child) continue;
        total += c3 * beta_rec(r - 1, prepend(d, a1 + c, theta), eps_child);
      }
    }
  }
  impl_->beta_memo[key] = {total, eps};
  return total;
}

Complex CoefficientEngine::gamma(int r, const IndexDecomposition& k,
                                 const IndexDecomposition& l, double eps) const {
  if (r < 2) throw std::invalid_argument("gamma: r must be >= 2");
  if (k.base() != base_ || l.base() != base_) throw std::invalid_argument("gamma: base mismatch");
  return gamma_eps(r, k, l, std::max(eps, tol_));
}

Complex CoefficientEngine::gamma_eps(int r, const IndexDecomposition& k,
                                     const IndexDecomposition& l, double eps) const {
  if (k.is_zero() || l.is_zero()) return 0.0;
  if (gamma_vanishes(r, k, l)) return 0.0;
  // recurse on the argument with the larger leading position
  if (l.leading_position() > k.leading_position()) {
    const Complex g = gamma_eps(r, l, k, eps);
    return (r % 2 == 0) ? std::conj(g) : -std::conj(g);
  }
  if (r == 2) return gamma2(k, l);

  const Key key = make_pair_key(r, k, l);
  auto it = impl_->gamma_memo.find(key);
  if (it != impl_->gamma_memo.end() && it->second.eps <= eps) return it->second.value;

  const int a1 = k.leading_position();
  const int kappa1 = k.digit(0).digit;
  const double A = std::pow(static_cast<double>(base_), -a1);
  if (A == 0.0) return 0.0;
  const int d1 = l.leading_position();
  const double envelope = b_abs_envelope(r - 1);
  const double decay = 2.0 * std::pow(inv_two_sin_, r - 1) *
                       std::pow(1.0 + 1.0 / base_ + 1.0 / (base_ * (base_ + 1.0)),
                                std::max(0, r - 3));
  // |gamma_{r-1}| <= min(max|b_tilde_{r-1}|, 2 s^(r-1) pf^(r-3) b^-max(lead))
  const auto child_bound = [this, envelope, decay, d1](int klead) {
    return std::min(envelope,
                    decay * std::pow(static_cast<double>(base_), -std::max(klead, d1)));
  };
  Complex total = 0.0;

  {
    const Complex c1 = -A * inv_one_minus_omega_neg_[static_cast<std::size_t>(kappa1)];
    const double eps1 = eps / (4.0 * std::abs(c1));
    const double ub = k.digit_count() >= 2 ? child_bound(k.digit(1).position) : child_bound(0);
    if (ub > eps1) total += c1 * gamma_eps(r - 1, k.truncated(1), l, eps1);
  }
  {
    const Complex c2 = -A * half_plus_inv_[static_cast<std::size_t>(kappa1)];
    const double ac2 = std::abs(c2);
    if (ac2 > 0.0) {
      const double eps2 = eps / (4.0 * ac2);
      if (child_bound(a1) > eps2) total += c2 * gamma_eps(r - 1, k, l, eps2);
    }
  }
  {
    double bc = 1.0;
    for (int c = 1; c <= c_cap_; ++c) {
      bc /= base_;
      if (A * inv_two_sin_ * envelope * bc * base_ <= eps / 8.0) break;
      const double ub = child_bound(a1 + c);
      for (int theta = 1; theta < base_; ++theta) {
        const Complex c3 = -A * bc * inv_omega_minus_one_[static_cast<std::size_t>(theta)];
        const double eps_child = (eps / 8.0) * bc / std::abs(c3);
        if (ub <= eps_child) continue;
        total += c3 * gamma_eps(r - 1, k.with_prepended(a1 + c, theta), l, eps_child);
      }
    }
  }
  impl_->gamma_memo[key] = {total, eps};
  return total;
}

namespace {

CoefficientEngine& shared_engine(int base, double tol) {
  thread_local std::map<std::pair<int, double>, std::unique_ptr<CoefficientEngine>> engines;
  auto& slot = engines[{base, tol}];
  if (!slot) slot = std::make_unique<CoefficientEngine>(base, tol);
  return *slot;
}

}  // namespace

Complex chi(int r, const IndexDecomposition& k, double tol) {
  return shared_engine(k.base(), tol).chi(r, k);
}

Complex beta(int r, const IndexDecomposition& k, double tol) {
  return shared_engine(k.base(), tol).beta(r, k);
}

Complex gamma(int r, const IndexDecomposition& k, const IndexDecomposition& l, double tol) {
  if (k.base() != l.base()) throw std::invalid_argument("gamma: mixed bases");
  return shared_engine(k.base(), tol).gamma(r, k, l);
}

Complex chi_closed_rr(const IndexDecomposition& k) {
  const int r = k.digit_count();
  if (r == 0) return 1.0;  // chi_{0,0}
  const int b = k.base();
  double fact = 1.0;
  std::int64_t possum = 0;
  Complex prod = 1.0;
  for (int w = 0; w < r; ++w) {
    fact *= (w + 1);
    possum += k.digit(w).position;
    prod *= 1.0 / (1.0 - unit_root(b, -k.digit(w).digit));
  }
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  return sign * fact * std::pow(static_cast<double>(b), -static_cast<double>(possum)) * prod;
}

Complex chi_closed_r_rm1(const IndexDecomposition& k) {
  const int v = k.digit_count();
  const int r = v + 1;
  const int b = k.base();
  double fact = 1.0;
  for (int i = 2; i <= r; ++i) fact *= i;
  std::int64_t possum = 0;
  Complex prod = 1.0;
  Complex inner = -0.5;
  for (int w = 0; w < v; ++w) {
    possum += k.digit(w).position;
    const int kap = k.digit(w).digit;
    prod *= 1.0 / (1.0 - unit_root(b, -kap));
    inner += (0.5 + 1.0 / (unit_root(b, -kap) - 1.0)) *
             std::pow(static_cast<double>(b), -k.digit(w).position);
  }
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  return sign * fact * std::pow(static_cast<double>(b), -static_cast<double>(possum)) * prod * inner;
}

Complex beta_closed_rr(const IndexDecomposition& k) {
  const int r = k.digit_count();
  if (r == 0) return 0.0;
  const int b = k.base();
  std::int64_t possum = 0;
  Complex prod = 1.0;
  for (int w = 0; w < r; ++w) {
    possum += k.digit(w).position;
    prod *= 1.0 / (1.0 - unit_root(b, -k.digit(w).digit));
  }
  const double sign = (r % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(static_cast<double>(b), -static_cast<double>(possum)) * prod;
}

Complex gamma2(const IndexDecomposition& k, const IndexDecomposition& l) {
  if (k.base() != l.base()) throw std::invalid_argument("gamma2: mixed bases");
  if (k.is_zero() || l.is_zero()) return 0.0;
  const int b = k.base();
  const auto bpow = [b](std::int64_t e) {
    return std::pow(static_cast<double>(b), -static_cast<double>(e));
  };
  const int a1 = k.leading_position();
  const int d1 = l.leading_position();
  const int kappa1 = k.digit(0).digit;
  const int lambda1 = l.digit(0).digit;
  const auto kp = k.truncated(1);
  const auto lp = l.truncated(1);

  if (k == l) {
    // diagonal from the min(x,y) = sum_m conj(J_m(x)) J_m(y) expansion:
    // the m = k term contributes cot^2(pi kappa_1/b)/4, the m' = k terms sum
    // to 1/12, and for v >= 2 the m = k' term adds 1/(4 sin^2).
    const double s = std::sin(std::numbers::pi * kappa1 / b);
    double val = 1.0 / (4.0 * s * s) - 1.0 / 6.0;
    if (k.digit_count() >= 2) val += 1.0 / (4.0 * s * s);
    return bpow(2 * a1) * val;
  }
  if (kp == lp && !kp.is_zero()) {
    return bpow(a1 + d1) / (unit_root(b, -kappa1) - 1.0) / (unit_root(b, lambda1) - 1.0);
  }
  if (kp == l) {
    const Complex t1 = bpow(a1 + d1) * (0.5 + 1.0 / (unit_root(b, -lambda1) - 1.0)) /
                       (unit_root(b, -kappa1) - 1.0);
    const Complex t2 = bpow(2 * a1) * (0.5 + 1.0 / (unit_root(b, kappa1) - 1.0)) /
                       (1.0 - unit_root(b, -kappa1));
    return t1 + t2;
  }
  if (k == lp) {
    const Complex t1 = bpow(a1 + d1) * (0.5 + 1.0 / (unit_root(b, kappa1) - 1.0)) /
                       (unit_root(b, lambda1) - 1.0);
    const Complex t2 = bpow(2 * d1) * (0.5 + 1.0 / (unit_root(b, -lambda1) - 1.0)) /
                       (1.0 - unit_root(b, lambda1));
    return t1 + t2;
  }
  if (k.digit_count() >= 2 && k.truncated(2) == l) {
    const int a2 = k.digit(1).position;
    const int kappa2 = k.digit(1).digit;
    return bpow(a1 + a2) / (1.0 - unit_root(b, -kappa2)) / (unit_root(b, -kappa1) - 1.0);
  }
  if (l.digit_count() >= 2 && l.truncated(2) == k) {
    const int d2 = l.digit(1).position;
    const int lambda2 = l.digit(1).digit;
    return bpow(d1 + d2) / (1.0 - unit_root(b, lambda2)) / (unit_root(b, lambda1) - 1.0);
  }
  return 0.0;
}

namespace {

// last n digits of k equal the last n digits of l
bool suffix_equal(const IndexDecomposition& k, const IndexDecomposition& l, int n) {
  if (n <= 0) return true;
  if (k.digit_count() < n || l.digit_count() < n) return false;
  const int kv = k.digit_count();
  const int lv = l.digit_count();
  for (int i = 0; i < n; ++i)
    if (!(k.digit(kv - 1 - i) == l.digit(lv - 1 - i))) return false;
  return true;
}

}  // namespace

bool gamma_vanishes(int r, const IndexDecomposition& k, const IndexDecomposition& l) {
  if (r < 2) throw std::invalid_argument("gamma_vanishes: r must be >= 2");
  if (k.is_zero() || l.is_zero()) return true;
  const int v = k.digit_count();
  const int w = l.digit_count();
  const int diff = std::abs(v - w);
  if (diff > r) return true;
  if (v == 1 && !(k.digit(0) == l.digit(w - 1))) return true;
  if (w == 1 && !(l.digit(0) == k.digit(v - 1))) return true;
  const int mn = std::min(v, w);
  if (diff >= r - 1 && !suffix_equal(k, l, mn)) return true;
  if (v > 1 && w > 1 && diff <= r - 2 && !suffix_equal(k, l, mn - 1)) return true;
  return false;
}

CoefficientRecord power_series_coeff(const FunctionSpec& f, const IndexDecomposition& k,
                                     int truncation, double tol) {
  if (!f.has_series) throw std::invalid_argument("power_series_coeff: series data absent");
  if (!(tol > 0.0)) throw std::invalid_argument("power_series_coeff: tol must be positive");
  auto& engine = shared_engine(k.base(), tol);
  const int v = k.digit_count();
  Complex acc = 0.0;
  double abs_coeff_sum = 0.0;
  const double term_budget = tol / (truncation - v + 2);
  for (int r = v; r <= truncation; ++r) {
    const double fr = f.series_coeff(r);
    if (fr == 0.0) continue;
    abs_coeff_sum += std::abs(fr);
    acc += fr * engine.chi(r, k, term_budget / std::abs(fr));
  }
  CoefficientRecord rec;
  rec.k = k;
  rec.value = acc;
  rec.method = CoefficientRecord::Method::series;
  const double tail = f.series_tail_abs ? f.series_tail_abs(truncation) / (truncation + 2) : 0.0;
  rec.error_estimate = tail + tol;
  return rec;
}

}  // namespace walshdecay
