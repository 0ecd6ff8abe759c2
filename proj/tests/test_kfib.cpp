#include <doctest.h>

#include <random>

#include "kfibpal/kfib.hpp"

using namespace kfibpal;
using namespace kfibpal::kfib;

// Values from an independent Python k-bonacci generator.
TEST_CASE("k-Fibonacci reference values") {
  CHECK(fib_k({5, 11}) == 464);
  CHECK(fib_k({3, 30}) == 29249425);
  CHECK(fib_k({2, 100}) == BigInt("354224848179261915075"));
  CHECK(fib_k({10, 60}) == BigInt("281246898991725024"));
  CHECK(fib_k({4, 1}) == 1);
  CHECK(fib_k({4, -2}) == 0);
  CHECK_THROWS_AS(fib_k({1, 5}), std::invalid_argument);
  CHECK_THROWS_AS(fib_k({4, -3}), std::invalid_argument);
}

TEST_CASE("window recurrence agrees with the defining sum") {
  for (int order = 2; order <= 12; ++order) {
    auto stream = fib_stream(order, 80);
    REQUIRE(stream.size() == 80);
    for (long n = 1; n <= 80; ++n) {
      CHECK(fib_k({order, n}) == fib_k_sum({order, n}));
      CHECK(stream[static_cast<std::size_t>(n - 1)] == fib_k({order, n}));
    }
  }
}

TEST_CASE("powers of two at the start of every sequence") {
  for (int order = 2; order <= 64; ++order) {
    for (long n = 2; n <= order + 1; ++n) CHECK(fib_k({order, n}) == pow2(static_cast<unsigned long>(n - 2)));
    CHECK(fib_k({order, order + 2}) == pow2(static_cast<unsigned long>(order)) - 1);
  }
}

TEST_CASE("palindromes of two repdigits") {
  PalindromeDecomposition d{4, 6, 1, 1};
  CHECK(d.valid());
  CHECK(palindrome_value(d) == 464);
  CHECK(decompose_palindrome(BigInt(464)) == d);
  CHECK_FALSE(decompose_palindrome(BigInt(4444)));
  CHECK_FALSE(decompose_palindrome(BigInt(4564)));
  CHECK_FALSE(decompose_palindrome(BigInt(44)));
  CHECK_FALSE(PalindromeDecomposition{0, 1, 1, 1}.valid());
  CHECK_FALSE(PalindromeDecomposition{3, 3, 1, 1}.valid());
  CHECK_THROWS_AS(palindrome_value({3, 3, 1, 1}), std::invalid_argument);
  CHECK(decompose_palindrome(std::string("9000009")) == PalindromeDecomposition{9, 0, 1, 5});
}

TEST_CASE("property: decomposition round-trips") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> digit(0, 9), len(1, 30);
  for (int i = 0; i < 2000; ++i) {
    PalindromeDecomposition d{1 + digit(rng) % 9, digit(rng), len(rng), len(rng)};
    if (d.d1 == d.d2) continue;
    BigInt v = palindrome_value(d);
    CHECK(v.get_str().size() == static_cast<std::size_t>(2 * d.outer + d.middle));
    CHECK(decompose_palindrome(v) == d);
  }
}

TEST_CASE("small-n eliminations") {
  auto scan = pow2_palindrome_scan(3, 12);
  CHECK(scan.candidates == 2916);
  CHECK(scan.hits.empty());
  CHECK(verify_divisibility_elimination().ok());
}

TEST_CASE("search finds 464 and nothing else in a small box") {
  auto sols = search_solutions(2, 60, 1, 400);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == Solution{5, 11, 464, {4, 6, 1, 1}});
  CHECK(search_row(5, 1, 400) == sols);
  CHECK(search_row(6, 1, 400).empty());
}
