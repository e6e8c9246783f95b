#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "walshdecay/basekit.hpp"

namespace walshdecay {

using Complex = std::complex<double>;

/// omega_b^e = exp(2*pi*i*e/b), with e reduced mod b. Backed by a per-base
/// table of the b-th roots so repeated digits never accumulate phase error.
Complex unit_root(int base, std::int64_t exponent);

/// wal_k(x) for x in [0,1): the root of unity with exponent
/// kappa_1 x_{a_1} + ... + kappa_v x_{a_v} (mod b). wal_0 = 1.
Complex wal(const IndexDecomposition& k, double x);

/// wal_k evaluated at the left endpoint of cell `cell` in the uniform
/// partition of [0,1) into base^level cells, using integer digit arithmetic.
Complex wal_at_cell(const IndexDecomposition& k, std::uint64_t cell, int level);

/// J_k(x) = int_0^x conj(wal_k(t)) dt for x in [0,1], summed exactly over the
/// b-adic cells on which conj(wal_k) is constant. J_0(x) = x.
Complex jk_direct(const IndexDecomposition& k, double x);

/// J_k(x) through its Walsh series, truncated so the result is within `tol`
/// of jk_direct. The tail of the c-sum is geometric with ratio 1/b.
Complex jk_series(const IndexDecomposition& k, double x, double tol);

/// Samples over the uniform partition of [0,1) into base^level cells,
/// indexed by left endpoints j * base^-level.
struct SampleGrid {
  int base = 2;
  int level = 0;
  std::vector<Complex> values;
};

enum class TransformDirection { forward, inverse };

/// Radix-b fast Walsh-Chrestenson transform in O(N log N) operations.
/// Forward maps samples to discrete coefficients
///   c(k) = (1/N) sum_j f(j/N) conj(wal_k(j/N)),  0 <= k < N = base^level;
/// inverse composes with forward to the identity.
SampleGrid fwt(const SampleGrid& grid, TransformDirection direction);

/// O(N^2) reference transform with the same normalization; used to check fwt.
SampleGrid naive_walsh_transform(const SampleGrid& grid, TransformDirection direction);

}  // namespace walshdecay
