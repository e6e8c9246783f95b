#include <doctest.h>

#include <stdexcept>

#include <random>

#include "walshdecay/basekit.hpp"

using namespace walshdecay;

TEST_CASE("decompose produces the base-b digit data") {
  const auto z = IndexDecomposition::decompose(0, 2);
  CHECK(z.is_zero());
  CHECK(z.digit_count() == 0);
  CHECK(z.leading_position() == 0);

  // 6 = 110 in base 2
  const auto k6 = IndexDecomposition::decompose(6, 2);
  REQUIRE(k6.digit_count() == 2);
  CHECK(k6.digit(0) == DigitTerm{3, 1});
  CHECK(k6.digit(1) == DigitTerm{2, 1});
  CHECK(k6.truncated(1).value() == 2);
  CHECK(k6.truncated(2).value() == 0);

  // 7 = 2*3 + 1
  const auto k7 = IndexDecomposition::decompose(7, 3);
  REQUIRE(k7.digit_count() == 2);
  CHECK(k7.digit(0) == DigitTerm{2, 2});
  CHECK(k7.digit(1) == DigitTerm{1, 1});
  CHECK(k7.truncated(1).value() == 1);
}

TEST_CASE("round trip recompose(decompose(k)) = k") {
  for (std::uint64_t k = 0; k < (1u << 16); ++k)
    CHECK(IndexDecomposition::decompose(k, 2).value() == k);
  for (std::uint64_t k = 0; k < 59049; ++k)  // 3^10
    CHECK(IndexDecomposition::decompose(k, 3).value() == k);
  for (std::uint64_t k = 0; k < 78125; ++k)  // 5^7
    CHECK(IndexDecomposition::decompose(k, 5).value() == k);

  std::mt19937_64 rng(7);
  for (int b : {2, 3, 5}) {
    // up to b^24
    long double cap = 1.0L;
    for (int i = 0; i < 24; ++i) cap *= b;
    std::uniform_int_distribution<std::uint64_t> dist(
        0, static_cast<std::uint64_t>(std::min<long double>(cap, 1.8e18L)));
    for (int i = 0; i < 2000; ++i) {
      const std::uint64_t k = dist(rng);
      CHECK(IndexDecomposition::decompose(k, b).value() == k);
    }
  }
}

TEST_CASE("from_digits validates digit data") {
  CHECK_THROWS_AS(IndexDecomposition::from_digits(2, {{2, 1}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(IndexDecomposition::from_digits(2, {{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(IndexDecomposition::from_digits(2, {{0, 1}}), std::invalid_argument);
  const auto k = IndexDecomposition::from_digits(3, {{4, 2}, {1, 1}});
  CHECK(k.value() == 2 * 27 + 1);
  CHECK(k.with_prepended(6, 1).value() == 243 + 55);
  CHECK_THROWS_AS(k.with_prepended(4, 1), std::invalid_argument);
}

TEST_CASE("mu examples") {
  const auto k6 = IndexDecomposition::decompose(6, 2);
  for (std::uint64_t k : {0ull, 1ull, 5ull, 100ull})
    CHECK(mu(0, IndexDecomposition::decompose(k, 2)) == 0);
  CHECK(mu(2, k6) == 5);  // a = (3,2), v = 2 = r
  CHECK(mu(1, k6) == 3);  // v > r keeps a_1
}

TEST_CASE("mu_per examples") {
  CHECK(mu_per(3, IndexDecomposition::decompose(0, 2)) == 0);
  CHECK(mu_per(2, IndexDecomposition::decompose(2, 2)) == 4);  // v=1<r: 2 + 1*2
  CHECK(mu_per(3, IndexDecomposition::decompose(6, 2)) == 7);  // 3+2 + 1*2
}

TEST_CASE("mu_per_pair examples and symmetry") {
  const auto z = IndexDecomposition::decompose(0, 2);
  const auto one = IndexDecomposition::decompose(1, 2);
  const auto two = IndexDecomposition::decompose(2, 2);
  for (std::uint64_t l : {1ull, 2ull, 6ull, 13ull}) {
    const auto ld = IndexDecomposition::decompose(l, 2);
    CHECK(mu_per_pair(2, z, ld) == mu_per(2, ld));
  }
  CHECK(mu_per_pair(2, one, one) == 2);
  CHECK(mu_per_pair(3, two, two) == 6);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> dist(0, 100000);
  for (int i = 0; i < 300; ++i) {
    const auto k = IndexDecomposition::decompose(dist(rng), 3);
    const auto l = IndexDecomposition::decompose(dist(rng), 3);
    const int r = 2 + static_cast<int>(i % 4);
    CHECK(mu_per_pair(r, k, l) == mu_per_pair(r, l, k));
  }
}

TEST_CASE("monotone nesting of the exponents") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::uint64_t> dist(0, 1u << 20);
  for (int b : {2, 3, 5}) {
    for (int i = 0; i < 500; ++i) {
      const auto k = IndexDecomposition::decompose(dist(rng), b);
      for (int r = 0; r < 8; ++r) {
        CHECK(mu(r, k) <= mu(r + 1, k));
        CHECK(mu(r + 1, k) <= mu_per(r + 1, k));
        CHECK(mu(r, k) <= mu_per(r, k));
      }
    }
  }
}

TEST_CASE("digit_expansion basics") {
  CHECK(digit_expansion(0.0, 2, 5) == std::vector<int>{0, 0, 0, 0, 0});
  CHECK(digit_expansion(0.75, 2, 3) == std::vector<int>{1, 1, 0});
  // double(1/3) is just below 1/3; the finite base-3 expansion is chosen
  CHECK(digit_expansion(1.0 / 3.0, 3, 4) == std::vector<int>{1, 0, 0, 0});
  CHECK_THROWS_AS(digit_expansion(1.0, 2, 3), std::domain_error);
  CHECK_THROWS_AS(digit_expansion(-0.25, 2, 3), std::domain_error);
}

TEST_CASE("digit_expansion picks the finite expansion of b-adic rationals") {
  std::mt19937_64 rng(17);
  for (int b : {2, 3, 5}) {
    for (int trial = 0; trial < 400; ++trial) {
      const int depth = 1 + static_cast<int>(rng() % 14);
      std::uint64_t cells = 1;
      for (int i = 0; i < depth; ++i) cells *= static_cast<std::uint64_t>(b);
      const std::uint64_t j = rng() % cells;
      const double x = static_cast<double>(j) / static_cast<double>(cells);
      const auto digits = digit_expansion(x, b, depth + 10);
      // digits beyond the b-adic resolution must be zero, never a (b-1) run
      for (int i = depth; i < depth + 10; ++i) CHECK(digits[static_cast<std::size_t>(i)] == 0);
      // recompose the leading digits
      std::uint64_t recomposed = 0;
      for (int i = 0; i < depth; ++i)
        recomposed = recomposed * static_cast<std::uint64_t>(b) +
                     static_cast<std::uint64_t>(digits[static_cast<std::size_t>(i)]);
      CHECK(recomposed == j);
    }
  }
}
