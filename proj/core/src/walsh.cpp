#include "walshdecay/walsh.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace walshdecay {

namespace {

constexpr int kTabledBases = 64;

const std::vector<Complex>& root_table(int base) {
  static const auto* tables = [] {
    auto* t = new std::vector<std::vector<Complex>>(kTabledBases + 1);
    for (int b = 2; b <= kTabledBases; ++b) {
      auto& row = (*t)[static_cast<std::size_t>(b)];
      row.resize(static_cast<std::size_t>(b));
      for (int e = 0; e < b; ++e)
        row[static_cast<std::size_t>(e)] =
            std::polar(1.0, 2.0 * std::numbers::pi * e / b);
    }
    return t;
  }();
  return (*tables)[static_cast<std::size_t>(base)];
}

int reduce_mod(std::int64_t e, int base) {
  const std::int64_t m = e % base;
  return static_cast<int>(m < 0 ? m + base : m);
}

std::uint64_t upow(int base, int e) {
  std::uint64_t p = 1;
  for (int i = 0; i < e; ++i) p *= static_cast<std::uint64_t>(base);
  return p;
}

// Exponent of wal_k at a point given its digit expansion (1-based positions).
std::int64_t wal_exponent(const IndexDecomposition& k, const std::vector<int>& xdigits) {
  std::int64_t e = 0;
  for (const auto& t : k.digits()) {
    const auto idx = static_cast<std::size_t>(t.position - 1);
    if (idx < xdigits.size()) e += static_cast<std::int64_t>(t.digit) * xdigits[idx];
  }
  return e;
}

Complex wal_from_digits(const IndexDecomposition& k, const std::vector<int>& xdigits) {
  return unit_root(k.base(), wal_exponent(k, xdigits));
}

}  // namespace

Complex unit_root(int base, std::int64_t exponent) {
  if (base < 2) throw std::invalid_argument("unit_root: base must be >= 2");
  const int e = reduce_mod(exponent, base);
  if (base <= kTabledBases) return root_table(base)[static_cast<std::size_t>(e)];
  return std::polar(1.0, 2.0 * std::numbers::pi * e / base);
}

Complex wal(const IndexDecomposition& k, double x) {
  if (!(x >= 0.0) || x >= 1.0) throw std::domain_error("wal: x outside [0,1)");
  if (k.is_zero()) return 1.0;
  const auto xd = digit_expansion(x, k.base(), k.leading_position());
  return wal_from_digits(k, xd);
}

Complex wal_at_cell(const IndexDecomposition& k, std::uint64_t cell, int level) {
  if (k.is_zero()) return 1.0;
  const int b = k.base();
  std::int64_t e = 0;
  for (const auto& t : k.digits()) {
    if (t.position > level) continue;  // digit of j*b^-level at that position is 0
    const std::uint64_t q = cell / upow(b, level - t.position);
    e += static_cast<std::int64_t>(t.digit) *
         static_cast<std::int64_t>(q % static_cast<std::uint64_t>(b));
  }
  return unit_root(b, e);
}

Complex jk_direct(const IndexDecomposition& k, double x) {
  if (!(x >= 0.0) || x > 1.0) throw std::domain_error("jk_direct: x outside [0,1]");
  if (k.is_zero()) return x;
  const int b = k.base();
  const int a1 = k.leading_position();
  if (a1 > 40) throw std::invalid_argument("jk_direct: leading position too large for cell summation");
  const std::uint64_t ncells = upow(b, a1);
  const double width = 1.0 / static_cast<double>(ncells);
  auto nfull = static_cast<std::uint64_t>(std::floor(x * static_cast<double>(ncells)));
  if (nfull > ncells) nfull = ncells;
  Complex acc = 0.0;
  for (std::uint64_t j = 0; j < nfull; ++j)
    acc += std::conj(wal_at_cell(k, j, a1));
  acc *= width;
  if (nfull < ncells) {
    const double left = static_cast<double>(nfull) * width;
    if (x > left) acc += (x - left) * std::conj(wal_at_cell(k, nfull, a1));
  }
  return acc;
}

Complex jk_series(const IndexDecomposition& k, double x, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("jk_series: tol must be positive");
  if (!(x >= 0.0) || x > 1.0) throw std::domain_error("jk_series: x outside [0,1]");
  const int b = k.base();
  const int cmax = static_cast<int>(std::ceil(std::log(1.0 / tol) / std::log(static_cast<double>(b)))) + 2;

  // x = 1 is represented by the non-terminating all-(b-1) digit string; with
  // it the truncated series reproduces J_k(1) exactly (0 for k >= 1, 1 for k = 0).
  if (k.is_zero()) {
    // J_0(x) = 1/2 + sum_{c,theta} b^-c (omega^theta - 1)^-1 conj(wal_{theta b^(c-1)}(x))
    const auto xd = x < 1.0 ? digit_expansion(x, b, cmax)
                            : std::vector<int>(static_cast<std::size_t>(cmax), b - 1);
    Complex acc = 0.5;
    double scale = 1.0;
    for (int c = 1; c <= cmax; ++c) {
      scale /= b;
      for (int theta = 1; theta < b; ++theta) {
        const Complex coef = scale / (unit_root(b, theta) - 1.0);
        const Complex w = unit_root(b, static_cast<std::int64_t>(theta) *
                                           xd[static_cast<std::size_t>(c - 1)]);
        acc += coef * std::conj(w);
      }
    }
    return acc;
  }

  const int a1 = k.leading_position();
  const int depth = a1 + cmax;
  const auto xd = x < 1.0 ? digit_expansion(x, b, depth)
                          : std::vector<int>(static_cast<std::size_t>(depth), b - 1);
  const int kappa1 = k.digit(0).digit;
  const double binva1 = std::pow(static_cast<double>(b), -a1);

  Complex acc = std::conj(wal_from_digits(k.truncated(1), xd)) /
                (1.0 - unit_root(b, -kappa1));
  acc += (0.5 + 1.0 / (unit_root(b, -kappa1) - 1.0)) * std::conj(wal_from_digits(k, xd));
  const std::int64_t base_exp = wal_exponent(k, xd);
  double scale = 1.0;
  for (int c = 1; c <= cmax; ++c) {
    scale /= b;
    const int xdig = xd[static_cast<std::size_t>(a1 + c - 1)];
    for (int theta = 1; theta < b; ++theta) {
      const Complex coef = scale / (unit_root(b, theta) - 1.0);
      // wal of (theta b^(a1+c-1) + k) at x
      const Complex w = unit_root(b, base_exp + static_cast<std::int64_t>(theta) * xdig);
      acc += coef * std::conj(w);
    }
  }
  return binva1 * acc;
}

namespace {

std::uint64_t digit_reverse(std::uint64_t j, int base, int level) {
  std::uint64_t r = 0;
  for (int i = 0; i < level; ++i) {
    r = r * static_cast<std::uint64_t>(base) + j % static_cast<std::uint64_t>(base);
    j /= static_cast<std::uint64_t>(base);
  }
  return r;
}

void check_grid(const SampleGrid& g) {
  if (g.base < 2) throw std::invalid_argument("grid base must be >= 2");
  if (g.level < 0) throw std::invalid_argument("grid level must be >= 0");
  if (g.values.size() != upow(g.base, g.level))
    throw std::invalid_argument("grid length is not base^level");
}

// In-place tensor-product DFT over each base-b digit axis (no twiddles).
// sign = -1 pairs with the forward (conjugated-wal) transform.
void tensor_stages(std::vector<Complex>& data, int base, int level, int sign) {
  const auto b = static_cast<std::size_t>(base);
  std::vector<Complex> butterfly(b * b);
  for (std::size_t kk = 0; kk < b; ++kk)
    for (std::size_t d = 0; d < b; ++d)
      butterfly[kk * b + d] =
          unit_root(base, sign * static_cast<std::int64_t>(kk * d));
  std::vector<Complex> y(b), z(b);
  const std::size_t n = data.size();
  std::size_t stride = 1;
  for (int t = 0; t < level; ++t) {
    const std::size_t block = stride * b;
    for (std::size_t q0 = 0; q0 < n; q0 += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t head = q0 + off;
        for (std::size_t d = 0; d < b; ++d) y[d] = data[head + d * stride];
        for (std::size_t kk = 0; kk < b; ++kk) {
          Complex s = 0.0;
          for (std::size_t d = 0; d < b; ++d) s += butterfly[kk * b + d] * y[d];
          z[kk] = s;
        }
        for (std::size_t kk = 0; kk < b; ++kk) data[head + kk * stride] = z[kk];
      }
    }
    stride = block;
  }
}

}  // namespace

SampleGrid fwt(const SampleGrid& grid, TransformDirection direction) {
  check_grid(grid);
  const std::size_t n = grid.values.size();
  SampleGrid out{grid.base, grid.level, std::vector<Complex>(n)};
  if (direction == TransformDirection::forward) {
    // c = (1/N) F^(tensor) P f, where P reverses the digit order of j.
    for (std::size_t j = 0; j < n; ++j)
      out.values[j] = grid.values[digit_reverse(j, grid.base, grid.level)];
    tensor_stages(out.values, grid.base, grid.level, -1);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& vv : out.values) vv *= inv_n;
  } else {
    std::vector<Complex> tmp = grid.values;
    tensor_stages(tmp, grid.base, grid.level, +1);
    for (std::size_t j = 0; j < n; ++j)
      out.values[j] = tmp[digit_reverse(j, grid.base, grid.level)];
  }
  return out;
}

SampleGrid naive_walsh_transform(const SampleGrid& grid, TransformDirection direction) {
  check_grid(grid);
  const std::size_t n = grid.values.size();
  SampleGrid out{grid.base, grid.level, std::vector<Complex>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const auto kd = IndexDecomposition::decompose(k, grid.base);
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Complex w = wal_at_cell(kd, j, grid.level);
      acc += grid.values[j] * (direction == TransformDirection::forward ? std::conj(w) : w);
    }
    out.values[k] = direction == TransformDirection::forward
                        ? acc / static_cast<double>(n)
                        : acc;
  }
  return out;
}

}  // namespace walshdecay
