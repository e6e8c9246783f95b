#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "walshdecay/bernoulli.hpp"
#include "walshdecay/corpus.hpp"
#include "walshdecay/exact.hpp"

using namespace walshdecay;

namespace {

std::uint64_t upow(int b, int e) {
  std::uint64_t p = 1;
  for (int i = 0; i < e; ++i) p *= static_cast<std::uint64_t>(b);
  return p;
}

}  // namespace

TEST_CASE("chi base cases") {
  for (int b : {2, 3, 5}) {
    const auto z = IndexDecomposition::decompose(0, b);
    for (int r = 0; r <= 6; ++r)
      CHECK(std::abs(chi(r, z) - Complex{1.0 / (r + 1), 0.0}) <= 1e-14);
    // chi_{1,1}(a_1; kappa_1) = -b^-a_1 (1 - omega^-kappa_1)^-1
    for (int a = 1; a <= 4; ++a) {
      for (int kap = 1; kap < b; ++kap) {
        const auto k = IndexDecomposition::from_digits(b, {{a, kap}});
        const Complex expect =
            -std::pow(static_cast<double>(b), -a) / (1.0 - unit_root(b, -kap));
        CHECK(std::abs(chi(1, k) - expect) <= 1e-14);
      }
    }
    // chi_{r,v} = 0 for v > r
    const auto k3 = IndexDecomposition::decompose(upow(b, 2) + b + 1, b);  // v = 3
    CHECK(chi(2, k3) == Complex{0.0, 0.0});
  }
  CHECK(std::abs(chi(2, IndexDecomposition::decompose(3, 2)) - Complex{1.0 / 16.0, 0.0}) <=
        1e-13);
}

TEST_CASE("chi matches the quadrature oracle on random keys") {
  std::mt19937_64 rng(53);
  for (int b : {2, 3}) {
    const auto f3 = make_monomial(3);
    for (int trial = 0; trial < 20; ++trial) {
      // random v = 2 key
      const int a2 = 1 + static_cast<int>(rng() % 4);
      const int a1 = a2 + 1 + static_cast<int>(rng() % 3);
      const int k1 = 1 + static_cast<int>(rng() % (b - 1));
      const int k2 = 1 + static_cast<int>(rng() % (b - 1));
      const auto k = IndexDecomposition::from_digits(b, {{a1, k1}, {a2, k2}});
      const auto oracle = walsh_coeff(f3.fn, k, 8);
      CHECK(std::abs(chi(3, k) - oracle.value) <= 1e-9);
    }
  }
}

TEST_CASE("closed forms agree with the recursion") {
  std::mt19937_64 rng(59);
  for (int b : {2, 3, 5}) {
    for (int trial = 0; trial < 40; ++trial) {
      const int v = 1 + static_cast<int>(rng() % 4);
      std::vector<DigitTerm> digits;
      int pos = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < v; ++i) {
        digits.insert(digits.begin(), {pos, 1 + static_cast<int>(rng() % (b - 1))});
        pos += 1 + static_cast<int>(rng() % 3);
      }
      const auto k = IndexDecomposition::from_digits(b, digits);
      CHECK(std::abs(chi_closed_rr(k) - chi(v, k)) <= 1e-10);
      CHECK(std::abs(chi_closed_r_rm1(k) - chi(v + 1, k)) <= 1e-10);
      CHECK(std::abs(beta_closed_rr(k) - beta(v, k)) <= 1e-10);
    }
  }
  // r = 1 reduces to chi_{1,0} = 1/2
  CHECK(std::abs(chi_closed_r_rm1(IndexDecomposition::decompose(0, 2)) - Complex{0.5, 0.0}) <=
        1e-15);
}

TEST_CASE("power series coefficients") {
  const auto flat = make_monomial(0);
  for (std::uint64_t kv : {1ull, 3ull, 9ull}) {
    const auto rec = power_series_coeff(flat.fn, IndexDecomposition::decompose(kv, 2), 10);
    CHECK(std::abs(rec.value) <= 1e-15);
  }
  const auto expf = make_exponential(1.0);
  const auto k1 = IndexDecomposition::decompose(1, 2);
  const auto viaseries = power_series_coeff(expf.fn, k1, 30);
  const auto viaquad = walsh_coeff(expf.fn, k1, 10);
  CHECK(std::abs(viaseries.value - viaquad.value) <= 1e-9);

  const auto geo = make_geometric(0.5);
  const auto k5 = IndexDecomposition::decompose(5, 3);
  const auto s5 = power_series_coeff(geo.fn, k5, 60);
  const auto q5 = walsh_coeff(geo.fn, k5, 10);
  CHECK(std::abs(s5.value - q5.value) <= 1e-9);
  CHECK(s5.method == CoefficientRecord::Method::series);
}

TEST_CASE("Bernoulli polynomials") {
  // b_1(x) = x - 1/2
  for (double x : {0.0, 0.3, 1.0}) CHECK(std::abs(eval_b(1, x) - (x - 0.5)) <= 1e-15);
  CHECK(std::abs(eval_b(2, 0.0) - 1.0 / 12.0) <= 1e-16);
  // B_2(x) = x^2 - x + 1/6
  const auto& b2 = bernoulli(2);
  CHECK(std::abs(b2.eval(0.25) - (0.0625 - 0.25 + 1.0 / 6.0)) <= 1e-15);
  // int_0^1 b_r = 0 via quadrature
  for (int r = 1; r <= 8; ++r) {
    const double val = integrate_gl([r](double x) { return eval_b(r, x); }, 0.0, 1.0, 12);
    CHECK(std::abs(val) <= 1e-12);
  }
  // derivative property b_r' = b_{r-1} at sample points
  for (int r = 2; r <= 6; ++r) {
    for (double x : {0.2, 0.7}) {
      const double h = 1e-6;
      const double fd = (eval_b(r, x + h) - eval_b(r, x - h)) / (2.0 * h);
      CHECK(std::abs(fd - eval_b(r - 1, x)) <= 1e-8);
    }
  }
  // reflection b_r(1-x) = (-1)^r b_r(x)
  for (int r = 1; r <= 6; ++r) {
    for (double x : {0.1, 0.4}) {
      const double sign = (r % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs(eval_b(r, 1.0 - x) - sign * eval_b(r, x)) <= 1e-14);
    }
  }
}

TEST_CASE("periodization sign conventions") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double x = u(rng), y = u(rng);
    // b_{2r}(|x-y|) = b~_{2r}(x-y)
    for (int r : {1, 2}) {
      CHECK(std::abs(eval_b(2 * r, std::abs(x - y)) - eval_b_tilde(2 * r, x - y)) <= 1e-14);
      // b_{2r+1}(|x-y|) = (-1)^{x<y} b~_{2r+1}(x-y)
      const double sign = x < y ? -1.0 : 1.0;
      CHECK(std::abs(eval_b(2 * r + 1, std::abs(x - y)) -
                     sign * eval_b_tilde(2 * r + 1, x - y)) <= 1e-14);
    }
  }
  CHECK(std::abs(eval_b_tilde(2, 1.25) - eval_b(2, 0.25)) <= 1e-15);
  CHECK(std::abs(eval_b_tilde(2, -0.75) - eval_b(2, 0.25)) <= 1e-15);
}

TEST_CASE("integral_abs_b values") {
  // int |b_1| = int |x - 1/2| = 1/4
  CHECK(std::abs(integral_abs_b(1) - 0.25) <= 1e-13);
  // quadrature cross-check at a kink-free resolution
  for (int r = 2; r <= 6; ++r) {
    double quad = 0.0;
    const int cells = 1 << 10;
    for (int c = 0; c < cells; ++c)
      quad += integrate_gl([r](double x) { return std::abs(eval_b(r, x)); },
                           static_cast<double>(c) / cells, static_cast<double>(c + 1) / cells, 6);
    CHECK(std::abs(integral_abs_b(r) - quad) <= 1e-7);
  }
}

TEST_CASE("beta closed forms and oracle agreement") {
  // beta_{2,2} = b^(-a1-a2) (1-w^-k1)^-1 (1-w^-k2)^-1
  for (int b : {2, 3}) {
    const auto k = IndexDecomposition::from_digits(b, {{3, 1}, {1, b - 1}});
    const Complex expect = std::pow(static_cast<double>(b), -4.0) /
                           (1.0 - unit_root(b, -1)) / (1.0 - unit_root(b, -(b - 1)));
    CHECK(std::abs(beta(2, k) - expect) <= 1e-12);
  }
  // beta_{2,1}(a1;k1) = b^(-2a1) (1-w^-k)^-1 (1/2 + (w^-k - 1)^-1); zero at b = 2
  CHECK(std::abs(beta(2, IndexDecomposition::decompose(1, 2))) <= 1e-14);
  for (int a = 1; a <= 3; ++a) {
    const auto k = IndexDecomposition::from_digits(3, {{a, 1}});
    const Complex expect = std::pow(3.0, -2.0 * a) / (1.0 - unit_root(3, -1)) *
                           (0.5 + 1.0 / (unit_root(3, -1) - 1.0));
    CHECK(std::abs(beta(2, k) - expect) <= 1e-12);
  }
  // beta_{3,1}(2;1) at b = 2 matches the oracle on b_3, k = 2
  const auto b3 = make_bernoulli_entry(3);
  const auto k2 = IndexDecomposition::decompose(2, 2);
  CHECK(std::abs(beta(3, k2) - walsh_coeff(b3.fn, k2, 10).value) <= 1e-9);
  // beta_{r,0} = 0 and v > r cases
  for (int r = 1; r <= 5; ++r) CHECK(beta(r, IndexDecomposition::decompose(0, 2)) == Complex{0.0});
  const auto k7 = IndexDecomposition::decompose(7, 2);  // v = 3
  CHECK(beta(2, k7) == Complex{0.0});
  CHECK(std::abs(walsh_coeff(make_bernoulli_entry(2).fn, k7, 10).value) <= 1e-10);
}

TEST_CASE("gamma2 table against the 2-D oracle, exhaustive small range") {
  auto g = [](double x, double y) { return eval_b_tilde(2, x - y); };
  for (int b : {2, 3}) {
    const int m = 3;
    const auto sweep = walsh_coeff_2d_sweep(g, b, m, 8);
    const std::uint64_t n = upow(b, m);
    double worst = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
      for (std::uint64_t l = 0; l < n; ++l) {
        const auto kd = IndexDecomposition::decompose(k, b);
        const auto ld = IndexDecomposition::decompose(l, b);
        worst = std::max(worst,
                         std::abs(gamma2(kd, ld) -
                                  sweep[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]));
      }
    }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("gamma2 diagonal matches the Fourier coefficient route") {
  // gamma_2(1,1) = b^-2 (1/(4 sin^2(pi/b)) - 1/6); equals 1/48 at b = 2
  const auto k1b2 = IndexDecomposition::decompose(1, 2);
  CHECK(std::abs(gamma2(k1b2, k1b2) - Complex{1.0 / 48.0, 0.0}) <= 1e-15);
  const auto k1b3 = IndexDecomposition::decompose(1, 3);
  CHECK(std::abs(gamma2(k1b3, k1b3) - Complex{1.0 / 54.0, 0.0}) <= 1e-15);
  auto g = [](double x, double y) { return eval_b_tilde(2, x - y); };
  CHECK(std::abs(gamma2(k1b2, k1b2) - walsh_coeff_2d(g, k1b2, k1b2, 8, 3)) <= 1e-12);
}

TEST_CASE("gamma vanishing predictor") {
  // |v - w| > r
  const auto k31 = IndexDecomposition::decompose(0b11111, 2);  // v = 5
  const auto k1 = IndexDecomposition::decompose(1, 2);
  CHECK(gamma_vanishes(2, k31, k1));
  // diagonal entries are non-vanishing
  for (std::uint64_t kv = 1; kv < 32; ++kv) {
    const auto k = IndexDecomposition::decompose(kv, 2);
    CHECK_FALSE(gamma_vanishes(2, k, k));
  }
  // predictor implies a zero table value, exhaustively for k,l < 2^5
  for (std::uint64_t kv = 0; kv < 32; ++kv) {
    for (std::uint64_t lv = 0; lv < 32; ++lv) {
      const auto k = IndexDecomposition::decompose(kv, 2);
      const auto l = IndexDecomposition::decompose(lv, 2);
      if (gamma_vanishes(2, k, l)) CHECK(std::abs(gamma2(k, l)) <= 1e-15);
      CHECK(gamma_vanishes(2, k, l) == gamma_vanishes(2, l, k));
    }
  }
}

TEST_CASE("gamma recursion") {
  // gamma_r(0,l) = gamma_r(k,0) = 0
  const auto z = IndexDecomposition::decompose(0, 2);
  for (std::uint64_t lv : {0ull, 1ull, 6ull}) {
    const auto l = IndexDecomposition::decompose(lv, 2);
    CHECK(gamma(3, z, l) == Complex{0.0});
    CHECK(gamma(3, l, z) == Complex{0.0});
  }
  // swap symmetry gamma_r(l,k) = (-1)^r conj(gamma_r(k,l))
  std::mt19937_64 rng(67);
  for (int b : {2, 3}) {
    for (int r : {2, 3, 4}) {
      for (int trial = 0; trial < 12; ++trial) {
        const auto k = IndexDecomposition::decompose(1 + rng() % (upow(b, 3) - 1), b);
        const auto l = IndexDecomposition::decompose(1 + rng() % (upow(b, 3) - 1), b);
        const auto a = gamma(r, k, l, 1e-11);
        const auto bb = gamma(r, l, k, 1e-11);
        const auto expect = (r % 2 == 0) ? std::conj(a) : -std::conj(a);
        CHECK(std::abs(bb - expect) <= 1e-10);
      }
    }
  }
  // at b = 2 everything is real, so gamma_3 vanishes on the diagonal
  const auto k1 = IndexDecomposition::decompose(1, 2);
  CHECK(std::abs(gamma(3, k1, k1)) <= 1e-12);
  // b = 3 diagonal against the 2-D oracle with triangle splitting
  auto g3 = [](double x, double y) { return eval_b_tilde(3, x - y); };
  const auto k1b3 = IndexDecomposition::decompose(1, 3);
  const auto oracle = walsh_coeff_2d(g3, k1b3, k1b3, 8, 3);
  CHECK(std::abs(gamma(3, k1b3, k1b3, 1e-10) - oracle) <= 1e-8);
}

TEST_CASE("Walsh series of b_4 reconstructs the function") {
  // partial sums over k < 2^m converge at randomly drawn points
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(u(rng));

  CoefficientEngine engine(2, 1e-12);
  std::vector<double> err;
  for (int m = 2; m <= 6; ++m) {
    double worst = 0.0;
    for (double x : xs) {
      Complex sum = 0.0;  // hat f(0) = int b_4 = 0
      for (std::uint64_t kv = 1; kv < upow(2, m); ++kv) {
        const auto k = IndexDecomposition::decompose(kv, 2);
        sum += engine.beta(4, k) * wal(k, x);
      }
      worst = std::max(worst, std::abs(sum - Complex{eval_b(4, x), 0.0}));
    }
    err.push_back(worst);
  }
  for (std::size_t i = 1; i < err.size(); ++i) CHECK(err[i] <= err[i - 1] + 1e-12);
  CHECK(err.back() < 0.5 * err.front());
}
