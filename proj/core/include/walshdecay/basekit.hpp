#pragma once

#include <cstdint>
#include <vector>

namespace walshdecay {

/// One nonzero digit of a base-b index: contributes digit * b^(position-1).
struct DigitTerm {
  int position = 0;  // >= 1
  int digit = 0;     // 1..base-1
  friend bool operator==(const DigitTerm&, const DigitTerm&) = default;
};

/// A non-negative integer together with its nonzero base-b digits, ordered by
/// strictly decreasing position.
///
/// The digit list is the primary representation: index series (prepending a
/// digit far above the current leading position) can produce integers that do
/// not fit a machine word, so `value()` is only usable when the recomposed
/// integer fits 64 bits.
class IndexDecomposition {
 public:
  IndexDecomposition() = default;  // zero in base 2

  static IndexDecomposition zero(int base);
  static IndexDecomposition decompose(std::uint64_t k, int base);
  /// Builds a decomposition from explicit digits. Digits must be sorted by
  /// strictly decreasing position, with values in 1..base-1.
  static IndexDecomposition from_digits(int base, std::vector<DigitTerm> digits);

  int base() const { return base_; }
  bool is_zero() const { return digits_.empty(); }
  /// Number of nonzero digits (v); zero iff the index is zero.
  int digit_count() const { return static_cast<int>(digits_.size()); }
  const std::vector<DigitTerm>& digits() const { return digits_; }
  /// i-th digit counted from the leading one: digit(0) = (a_1, kappa_1).
  const DigitTerm& digit(int i) const { return digits_[static_cast<std::size_t>(i)]; }
  /// Leading position a_1; 0 for the zero index.
  int leading_position() const { return digits_.empty() ? 0 : digits_.front().position; }

  /// Recomposes the integer. Throws std::overflow_error when it exceeds 64 bits.
  std::uint64_t value() const;

  /// Strips the `strip` leading digits: truncated(1) = k', truncated(2) = k''.
  /// Returns zero when strip >= digit_count().
  IndexDecomposition truncated(int strip = 1) const;

  /// theta * b^(position-1) + k; position must exceed the leading position.
  IndexDecomposition with_prepended(int position, int digit) const;

  friend bool operator==(const IndexDecomposition&, const IndexDecomposition&) = default;

 private:
  int base_ = 2;
  std::vector<DigitTerm> digits_;
};

/// Decay exponent mu_r(k): 0 for r = 0 or k = 0, a_1+...+a_v for v <= r,
/// a_1+...+a_r for v > r.
std::int64_t mu(int r, const IndexDecomposition& k);

/// Periodic-variant exponent mu_{r,per}(k): pads with (r-v) copies of a_v
/// when v < r; equals a_1+...+a_r for v >= r.
std::int64_t mu_per(int r, const IndexDecomposition& k);

/// Pair exponent: max over s in 0..r of mu_per(s,k) + mu_per(r-s,l).
std::int64_t mu_per_pair(int r, const IndexDecomposition& k, const IndexDecomposition& l);

/// First `depth` base-b digits of x in [0,1): x = x_1/b + x_2/b^2 + ...
/// Computed exactly from the binary representation of x. Inputs within a few
/// ulps of a b-adic rational are snapped to its finite expansion, so the
/// result never ends in a spurious run of (b-1) digits.
std::vector<int> digit_expansion(double x, int base, int depth);

}  // namespace walshdecay
