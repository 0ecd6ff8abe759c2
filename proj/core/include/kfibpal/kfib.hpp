#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kfibpal/bignum.hpp"

namespace kfibpal::kfib {

struct KIndex {
  int order;
  long index;
};

/// d1 repeated `outer` times, d2 repeated `middle` times, d1 repeated `outer`
/// times.
struct PalindromeDecomposition {
  int d1;
  int d2;
  long outer;
  long middle;

  bool valid() const;
  friend bool operator==(const PalindromeDecomposition&, const PalindromeDecomposition&) = default;
};

std::string to_string(const PalindromeDecomposition& d);

/// F_n^{(k)} via F_n = 2F_{n-1} - F_{n-1-k}. Terms with 2-k <= n <= 0 are
/// zero and F_1 = 1. Throws std::invalid_argument for k < 2 or n < 2-k.
BigInt fib_k(KIndex idx);

/// Same value from the defining k-term sum; O(n k) and only meant as a
/// cross-check of fib_k.
BigInt fib_k_sum(KIndex idx);

/// F_1 .. F_{n_max}.
std::vector<BigInt> fib_stream(int order, long last_index);

/// Throws std::invalid_argument if `d` is not valid.
BigInt palindrome_value(const PalindromeDecomposition& d);

/// Smallest-outer decomposition of N, if any. Fewer than 3 digits: none.
std::optional<PalindromeDecomposition> decompose_palindrome(const BigInt& N);
std::optional<PalindromeDecomposition> decompose_palindrome(const std::string& digits);

struct Pow2Hit {
  BigInt value;
  PalindromeDecomposition decomposition;
};

struct Pow2Scan {
  std::vector<Pow2Hit> hits;
  long candidates = 0;
};

Pow2Scan pow2_palindrome_scan(int max_outer, int max_middle);

struct DivisibilityCase {
  char part;  // 'a': 16 | d1(10^len - 1) ?, 'b': 2^14 | (d1 - d2)10^len - d1 ?
  int d1;
  int d2;     // -1 for part a
  int len;
  BigInt value;
  bool holds;  // the claimed non-divisibility
};

struct DivisibilityReport {
  std::vector<DivisibilityCase> cases;
  long counterexamples = 0;
  bool ok() const { return counterexamples == 0; }
};

/// (a) 16 does not divide d1(10^len - 1) for d1 in [1,9], len in [4,40];
/// (b) 2^14 does not divide (d1 - d2)10^len - d1 for len <= 3, all digit
/// pairs (and the value is nonzero with |value| < 2^14).
DivisibilityReport verify_divisibility_elimination();

struct Solution {
  int order;
  long index;
  BigInt value;
  PalindromeDecomposition decomposition;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Every (order, index) in the box whose term is a palindromic concatenation of two
/// distinct repdigits, ascending in (order, index). Rows are independent and are
/// distributed over the worker pool.
std::vector<Solution> search_solutions(int order_lo, int order_hi, long index_lo, long index_hi);

/// One row of search_solutions.
std::vector<Solution> search_row(int order, long index_lo, long index_hi);

}  // namespace kfibpal::kfib
