#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "walshdecay/bernoulli.hpp"
#include "walshdecay/corpus.hpp"
#include "walshdecay/oracle.hpp"

using namespace walshdecay;

namespace {

std::uint64_t upow(int b, int e) {
  std::uint64_t p = 1;
  for (int i = 0; i < e; ++i) p *= static_cast<std::uint64_t>(b);
  return p;
}

// Fourier route for gamma_2: tau_{h,k} = int_0^1 e^(2 pi i h x) conj(wal_k) dx
// summed over the cells on which wal_k is constant, then
// gamma_2(k,l) = (1/4pi^2) sum_h h^-2 tau_{h,k} conj(tau_{h,l}).
Complex tau(int h, const IndexDecomposition& k) {
  const int level = std::max(k.leading_position(), 1);
  const std::uint64_t n = upow(k.base(), level);
  const double w = 2.0 * std::numbers::pi * h;
  Complex acc = 0.0;
  for (std::uint64_t j = 0; j < n; ++j) {
    const double x0 = static_cast<double>(j) / static_cast<double>(n);
    const double x1 = static_cast<double>(j + 1) / static_cast<double>(n);
    const Complex seg = (std::polar(1.0, w * x1) - std::polar(1.0, w * x0)) / Complex{0.0, w};
    acc += std::conj(wal_at_cell(k, j, level)) * seg;
  }
  return acc;
}

Complex gamma2_fourier(const IndexDecomposition& k, const IndexDecomposition& l, int hmax) {
  Complex acc = 0.0;
  for (int h = 1; h <= hmax; ++h) {
    const double inv = 1.0 / (static_cast<double>(h) * h);
    acc += inv * (tau(h, k) * std::conj(tau(h, l)) + tau(-h, k) * std::conj(tau(-h, l)));
  }
  const double pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
  return acc / pi2;
}

}  // namespace

TEST_CASE("Gauss-Legendre exactness") {
  // order n integrates degree 2n-1 exactly
  for (int order : {4, 8, 12}) {
    const int deg = 2 * order - 1;
    const double val = integrate_gl([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0, order);
    CHECK(std::abs(val - 1.0 / (deg + 1)) <= 1e-14);
  }
}

TEST_CASE("walsh_coeff examples") {
  // constant: orthogonality
  const auto one = make_monomial(0);
  for (int b : {2, 3}) {
    for (std::uint64_t kv : {1ull, 4ull, 11ull}) {
      const auto rec = walsh_coeff(one.fn, IndexDecomposition::decompose(kv, b));
      CHECK(std::abs(rec.value) <= 1e-14);
    }
  }
  // f(x) = x at k = 2^(a-1): -2^(-a-1)
  const auto lin = make_monomial(1);
  for (int a = 1; a <= 6; ++a) {
    const auto k = IndexDecomposition::decompose(upow(2, a - 1), 2);
    const auto rec = walsh_coeff(lin.fn, k);
    CHECK(std::abs(rec.value - Complex{-std::pow(2.0, -a - 1), 0.0}) <= 1e-13);
  }
  // f(x) = x^2 at k = 3: 1/16
  const auto sq = make_monomial(2);
  const auto rec = walsh_coeff(sq.fn, IndexDecomposition::decompose(3, 2), 8);
  CHECK(std::abs(rec.value - Complex{1.0 / 16.0, 0.0}) <= 1e-13);
  CHECK(rec.error_estimate >= 0.0);
}

TEST_CASE("quadrature is order-stable on polynomials") {
  for (int p = 0; p <= 12; ++p) {
    const auto f = make_monomial(p);
    for (std::uint64_t kv : {1ull, 3ull, 6ull}) {
      const auto k = IndexDecomposition::decompose(kv, 2);
      const auto lo = walsh_coeff(f.fn, k, 8);
      const auto hi = walsh_coeff(f.fn, k, 16);
      CHECK(std::abs(lo.value - hi.value) <= 1e-13);
    }
  }
}

TEST_CASE("refinement stability for smooth members") {
  for (const auto& entry : {make_exponential(1.0), make_sine_pi(), make_geometric(0.5)}) {
    for (std::uint64_t kv : {1ull, 5ull, 12ull}) {
      const auto k = IndexDecomposition::decompose(kv, 2);
      const auto lo = walsh_coeff(entry.fn, k, 8, 4);
      const auto hi = walsh_coeff(entry.fn, k, 8, 8);
      CHECK(std::abs(lo.value - hi.value) <= 1e-11);
    }
  }
}

TEST_CASE("sweep agrees with single-coefficient quadrature") {
  std::mt19937_64 rng(41);
  for (int b : {2, 3}) {
    const int m = 5;
    const auto entry = make_exponential(1.0);
    const auto sweep = walsh_coeff_sweep(entry.fn, b, m);
    for (int trial = 0; trial < 20; ++trial) {
      const std::uint64_t kv = rng() % upow(b, m);
      const auto k = IndexDecomposition::decompose(kv, b);
      const auto single = walsh_coeff(entry.fn, k, 8, m);
      CHECK(std::abs(sweep[static_cast<std::size_t>(kv)] - single.value) <= 1e-12);
    }
  }
}

TEST_CASE("walsh_coeff_2d examples") {
  auto g_one = [](double, double) { return 1.0; };
  const auto z = IndexDecomposition::decompose(0, 2);
  CHECK(std::abs(walsh_coeff_2d(g_one, z, z, 6, 2) - Complex{1.0, 0.0}) <= 1e-13);

  auto g_b2 = [](double x, double y) { return eval_b_tilde(2, x - y); };
  for (std::uint64_t kv : {1ull, 2ull, 5ull}) {
    const auto k = IndexDecomposition::decompose(kv, 2);
    CHECK(std::abs(walsh_coeff_2d(g_b2, k, z, 8, 3)) <= 1e-12);  // gamma_2(k,0) = 0
    CHECK(std::abs(walsh_coeff_2d(g_b2, z, k, 8, 3)) <= 1e-12);
  }

  // diagonal entry: three independent routes meet at 1/48 for b = 2, k = l = 1
  const auto k1 = IndexDecomposition::decompose(1, 2);
  const auto quad = walsh_coeff_2d(g_b2, k1, k1, 8, 3);
  CHECK(std::abs(quad - Complex{1.0 / 48.0, 0.0}) <= 1e-12);
  const auto fourier = gamma2_fourier(k1, k1, 4000);
  CHECK(std::abs(quad - fourier) <= 1e-8);
}

TEST_CASE("2-D sweep agrees with single pairs") {
  auto g_b2 = [](double x, double y) { return eval_b_tilde(2, x - y); };
  for (int b : {2, 3}) {
    const int m = 2;
    const auto sweep = walsh_coeff_2d_sweep(g_b2, b, m, 8);
    const std::uint64_t n = upow(b, m);
    for (std::uint64_t k = 0; k < n; ++k) {
      for (std::uint64_t l = 0; l < n; ++l) {
        const auto kd = IndexDecomposition::decompose(k, b);
        const auto ld = IndexDecomposition::decompose(l, b);
        const auto single = walsh_coeff_2d(g_b2, kd, ld, 8, m);
        CHECK(std::abs(sweep[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] - single) <=
              1e-12);
      }
    }
  }
}

TEST_CASE("2-D coefficients of b_tilde_r flip with (-1)^r under swap") {
  std::mt19937_64 rng(43);
  for (int r : {2, 3}) {
    auto g = [r](double x, double y) { return eval_b_tilde(r, x - y); };
    for (int trial = 0; trial < 6; ++trial) {
      const auto k = IndexDecomposition::decompose(1 + rng() % 15, 2);
      const auto l = IndexDecomposition::decompose(1 + rng() % 15, 2);
      const auto a = walsh_coeff_2d(g, k, l, 8, 4);
      const auto b_ = walsh_coeff_2d(g, l, k, 8, 4);
      const auto expect = (r % 2 == 0) ? std::conj(a) : -std::conj(a);
      CHECK(std::abs(b_ - expect) <= 1e-9);
    }
  }
}

TEST_CASE("fractional_variation examples") {
  const auto flat = make_monomial(0).fn;
  CHECK(fractional_variation(flat, 1.0, 8) == 0.0);
  CHECK(std::abs(fractional_variation(make_monomial(1).fn, 1.0, 8) - 1.0) <= 1e-12);
  CHECK(std::abs(fractional_variation(make_monomial(2).fn, 1.0, 8) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(fractional_variation(flat, 0.0, 8), std::domain_error);
  CHECK_THROWS_AS(fractional_variation(flat, 1.5, 8), std::domain_error);
}

TEST_CASE("fractional_variation estimator is non-decreasing in depth") {
  FunctionSpec f = make_sine_pi().fn;
  f.derivatives.clear();  // force the partition estimator
  double prev = 0.0;
  for (int depth = 1; depth <= 10; ++depth) {
    const double est = fractional_variation(f, 0.7, depth);
    CHECK(est >= prev - 1e-15);
    prev = est;
  }
  // lambda = 1 partition sums approach the analytic total variation from below
  const double tv = fractional_variation(f, 1.0, 12);
  CHECK(std::abs(tv - 2.0) <= 1e-10);
}

TEST_CASE("iterated antiderivatives") {
  const auto one = make_monomial(0);
  const auto f1 = iterated_antiderivative(one.fn, 1);
  const auto f2 = iterated_antiderivative(one.fn, 2);
  for (double x : {0.1, 0.5, 0.9}) {
    CHECK(std::abs(f1.f(x) - x) <= 1e-13);
    CHECK(std::abs(f2.f(x) - 0.5 * x * x) <= 1e-13);
  }
  for (const auto& entry : {make_exponential(1.0), make_sine_pi()}) {
    for (int r = 1; r <= 4; ++r) {
      const auto fr = iterated_antiderivative(entry.fn, r);
      CHECK(std::abs(fr.f(0.0)) <= 1e-15);
      // F_r' = F_{r-1} by central differences
      const double h = 1e-6;
      for (double x : {0.3, 0.6}) {
        const double fd = (fr.f(x + h) - fr.f(x - h)) / (2.0 * h);
        CHECK(std::abs(fd - fr.derivatives[1](x)) <= 1e-7);
      }
    }
  }
}

TEST_CASE("Taylor remainder equals the iterated antiderivative of f^(r)") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  for (const auto& entry : {make_exponential(1.0), make_sine_pi()}) {
    for (int r : {2, 3}) {
      const auto remainder = iterated_antiderivative(derivative_spec(entry, r), r);
      for (int trial = 0; trial < 50; ++trial) {
        const double x = ux(rng);
        double taylor = 0.0;
        double fact = 1.0;
        for (int s = 0; s < r; ++s) {
          if (s > 0) fact *= s;
          taylor += entry.deriv_at_zero(s) / fact * std::pow(x, s);
        }
        CHECK(std::abs(entry.fn.f(x) - taylor - remainder.f(x)) <= 1e-8);
      }
    }
  }
}
