#include "walshdecay/basekit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace walshdecay {

namespace {

void check_base(int base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
}

}  // namespace

IndexDecomposition IndexDecomposition::zero(int base) {
  check_base(base);
  IndexDecomposition d;
  d.base_ = base;
  return d;
}

IndexDecomposition IndexDecomposition::decompose(std::uint64_t k, int base) {
  check_base(base);
  IndexDecomposition d;
  d.base_ = base;
  const auto b = static_cast<std::uint64_t>(base);
  int pos = 1;
  while (k != 0) {
    const int digit = static_cast<int>(k % b);
    if (digit != 0) d.digits_.push_back({pos, digit});
    k /= b;
    ++pos;
  }
  std::reverse(d.digits_.begin(), d.digits_.end());
  return d;
}

IndexDecomposition IndexDecomposition::from_digits(int base, std::vector<DigitTerm> digits) {
  check_base(base);
  int prev = std::numeric_limits<int>::max();
  for (const auto& t : digits) {
    if (t.position < 1 || t.position >= prev)
      throw std::invalid_argument("digit positions must be >= 1 and strictly decreasing");
    if (t.digit < 1 || t.digit >= base)
      throw std::invalid_argument("digit values must lie in 1..base-1");
    prev = t.position;
  }
  IndexDecomposition d;
  d.base_ = base;
  d.digits_ = std::move(digits);
  return d;
}

std::uint64_t IndexDecomposition::value() const {
  unsigned __int128 acc = 0;
  for (const auto& t : digits_) {
    unsigned __int128 p = 1;
    for (int i = 1; i < t.position; ++i) {
      p *= static_cast<unsigned>(base_);
      if (p > std::numeric_limits<std::uint64_t>::max())
        throw std::overflow_error("index does not fit 64 bits");
    }
    acc += p * static_cast<unsigned>(t.digit);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("index does not fit 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

IndexDecomposition IndexDecomposition::truncated(int strip) const {
  if (strip < 0) throw std::invalid_argument("strip must be non-negative");
  IndexDecomposition d;
  d.base_ = base_;
  if (strip < digit_count())
    d.digits_.assign(digits_.begin() + strip, digits_.end());
  return d;
}

IndexDecomposition IndexDecomposition::with_prepended(int position, int digit) const {
  if (position <= leading_position())
    throw std::invalid_argument("prepended position must exceed the leading position");
  if (digit < 1 || digit >= base_)
    throw std::invalid_argument("prepended digit must lie in 1..base-1");
  IndexDecomposition d;
  d.base_ = base_;
  d.digits_.reserve(digits_.size() + 1);
  d.digits_.push_back({position, digit});
  d.digits_.insert(d.digits_.end(), digits_.begin(), digits_.end());
  return d;
}

std::int64_t mu(int r, const IndexDecomposition& k) {
  if (r < 0) throw std::invalid_argument("mu: r must be >= 0");
  if (r == 0 || k.is_zero()) return 0;
  const int take = std::min(r, k.digit_count());
  std::int64_t sum = 0;
  for (int i = 0; i < take; ++i) sum += k.digit(i).position;
  return sum;
}

std::int64_t mu_per(int r, const IndexDecomposition& k) {
  if (r < 0) throw std::invalid_argument("mu_per: r must be >= 0");
  if (r == 0 || k.is_zero()) return 0;
  const int v = k.digit_count();
  if (v >= r) return mu(r, k);
  std::int64_t sum = 0;
  for (int i = 0; i < v; ++i) sum += k.digit(i).position;
  sum += static_cast<std::int64_t>(r - v) * k.digit(v - 1).position;
  return sum;
}

std::int64_t mu_per_pair(int r, const IndexDecomposition& k, const IndexDecomposition& l) {
  if (r < 0) throw std::invalid_argument("mu_per_pair: r must be >= 0");
  std::int64_t best = 0;
  for (int s = 0; s <= r; ++s)
    best = std::max(best, mu_per(s, k) + mu_per(r - s, l));
  return best;
}

std::vector<int> digit_expansion(double x, int base, int depth) {
  check_base(base);
  if (depth < 1) throw std::invalid_argument("digit_expansion: depth must be >= 1");
  if (!(x >= 0.0) || x >= 1.0) throw std::domain_error("digit_expansion: x outside [0,1)");

  std::vector<int> out(static_cast<std::size_t>(depth), 0);
  if (x == 0.0) return out;

  // x = mant / 2^frac_bits with mant < 2^53, held as an exact binary
  // fixed-point fraction in little-endian 64-bit limbs.
  int exp2 = 0;
  const double m = std::frexp(x, &exp2);               // x = m * 2^exp2, m in [0.5, 1)
  const auto mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
  const int frac_bits = 53 - exp2;                     // >= 53 since x < 1
  const int limbs = (frac_bits + 63) / 64;
  std::vector<std::uint64_t> frac(static_cast<std::size_t>(limbs), 0);
  const int shift = 64 * limbs - frac_bits;            // align denominator to 2^(64*limbs)
  {
    const int lo_limb = shift / 64;
    const int lo_off = shift % 64;
    frac[static_cast<std::size_t>(lo_limb)] |= mant << lo_off;
    if (lo_off != 0 && lo_limb + 1 < limbs)
      frac[static_cast<std::size_t>(lo_limb + 1)] |= mant >> (64 - lo_off);
  }

  // Extract digits; after each one, snap to the nearest b-adic rational when
  // the remainder says x is within 64 eps of it. Snapping chooses the finite
  // expansion of b-adic inputs (in either rounding direction) and perturbs a
  // generic x by at most 64 eps.
  const long double eps64 = 64.0L * std::ldexp(1.0L, -52);
  long double scale = 1.0L;  // b^i, saturating
  for (int i = 0; i < depth; ++i) {
    unsigned __int128 carry = 0;
    for (int j = 0; j < limbs; ++j) {
      const unsigned __int128 t =
          static_cast<unsigned __int128>(frac[static_cast<std::size_t>(j)]) *
              static_cast<unsigned>(base) + carry;
      frac[static_cast<std::size_t>(j)] = static_cast<std::uint64_t>(t);
      carry = t >> 64;
    }
    out[static_cast<std::size_t>(i)] = static_cast<int>(carry);
    if (scale < 1e300L) scale *= base;
    const long double snap = eps64 * scale;

    long double rho =
        std::ldexp(static_cast<long double>(frac[static_cast<std::size_t>(limbs - 1)]), -64);
    if (limbs > 1)
      rho += std::ldexp(static_cast<long double>(frac[static_cast<std::size_t>(limbs - 2)]), -128);
    if (rho <= snap) break;  // truncates; the rest of `out` is already zero
    if (1.0L - rho <= snap) {
      int j = i;
      for (; j >= 0; --j) {
        if (out[static_cast<std::size_t>(j)] + 1 < base) {
          ++out[static_cast<std::size_t>(j)];
          break;
        }
        out[static_cast<std::size_t>(j)] = 0;
      }
      if (j < 0) {
        // x is within snapping distance of 1; keep the truncated digits
        for (int t = 0; t <= i; ++t) out[static_cast<std::size_t>(t)] = base - 1;
        continue;
      }
      std::fill(out.begin() + j + 1, out.end(), 0);
      break;
    }
  }
  return out;
}

}  // namespace walshdecay
