#include "kfibpal/kfib.hpp"

#include <algorithm>
#include <stdexcept>

#include "kfibpal/parallel.hpp"

namespace kfibpal::kfib {

bool PalindromeDecomposition::valid() const {
  return d1 >= 1 && d1 <= 9 && d2 >= 0 && d2 <= 9 && d1 != d2 && outer >= 1 && middle >= 1;
}

std::string to_string(const PalindromeDecomposition& d) {
  return "(d1=" + std::to_string(d.d1) + ", d2=" + std::to_string(d.d2) +
         ", outer=" + std::to_string(d.outer) + ", middle=" + std::to_string(d.middle) + ")";
}

namespace {

void check_index(KIndex idx) {
  if (idx.order < 2) throw std::invalid_argument("k-Fibonacci order must be >= 2");
  if (idx.index < 2 - idx.order) throw std::invalid_argument("k-Fibonacci index must be >= 2 - k");
}

// F_1 .. F_{n_max} by the window identity.
std::vector<BigInt> window_terms(int order, long last) {
  std::vector<BigInt> f(static_cast<std::size_t>(std::max<long>(last, 0)));
  for (long i = 1; i <= last; ++i) {
    BigInt& out = f[static_cast<std::size_t>(i - 1)];
    if (i <= 2) {
      out = 1;
      continue;
    }
    out = f[static_cast<std::size_t>(i - 2)];
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(), 1);
    long back = i - 1 - order;
    if (back >= 1) out -= f[static_cast<std::size_t>(back - 1)];
  }
  return f;
}

bool all_same(const std::string& s, std::size_t from, std::size_t len, char c) {
  for (std::size_t i = from; i < from + len; ++i) {
    if (s[i] != c) return false;
  }
  return true;
}

}  // namespace

BigInt fib_k(KIndex idx) {
  check_index(idx);
  if (idx.index <= 0) return 0;
  return window_terms(idx.order, idx.index).back();
}

BigInt fib_k_sum(KIndex idx) {
  check_index(idx);
  if (idx.index <= 0) return 0;
  // terms[i] holds the term of index i + 2 - order
  std::vector<BigInt> terms(static_cast<std::size_t>(idx.index + idx.order - 1), 0);
  terms[static_cast<std::size_t>(idx.order - 1)] = 1;
  for (long i = idx.order; i < idx.index + idx.order - 1; ++i) {
    BigInt s = 0;
    for (long j = 1; j <= idx.order; ++j) s += terms[static_cast<std::size_t>(i - j)];
    terms[static_cast<std::size_t>(i)] = s;
  }
  return terms.back();
}

std::vector<BigInt> fib_stream(int order, long last_index) {
  if (order < 2) throw std::invalid_argument("k-Fibonacci order must be >= 2");
  if (last_index < 1) throw std::invalid_argument("fib_stream: last index must be >= 1");
  return window_terms(order, last_index);
}

BigInt palindrome_value(const PalindromeDecomposition& d) {
  if (!d.valid()) throw std::invalid_argument("invalid palindrome decomposition " + to_string(d));
  auto lo = static_cast<unsigned long>(d.outer);
  auto lm = static_cast<unsigned long>(d.middle);
  BigInt outer = d.d1 * ((pow10(lo) - 1) / 9);
  BigInt middle = d.d2 * ((pow10(lm) - 1) / 9);
  return outer * pow10(lo + lm) + middle * pow10(lo) + outer;
}

std::optional<PalindromeDecomposition> decompose_palindrome(const std::string& s) {
  const std::size_t len = s.size();
  if (len < 3 || s[0] == '0' || s[0] == '-') return std::nullopt;
  const char c1 = s[0];
  for (std::size_t outer = 1; 2 * outer < len; ++outer) {
    if (s[outer - 1] != c1) break;
    std::size_t middle = len - 2 * outer;
    char c2 = s[outer];
    if (c2 == c1) continue;
    if (all_same(s, outer, middle, c2) && all_same(s, len - outer, outer, c1)) {
      return PalindromeDecomposition{c1 - '0', c2 - '0', static_cast<long>(outer), static_cast<long>(middle)};
    }
  }
  return std::nullopt;
}

std::optional<PalindromeDecomposition> decompose_palindrome(const BigInt& N) {
  if (N < 100) return std::nullopt;
  return decompose_palindrome(N.get_str());
}

Pow2Scan pow2_palindrome_scan(int max_outer, int max_middle) {
  if (max_outer < 1 || max_middle < 1) throw std::invalid_argument("pow2_palindrome_scan: bounds must be >= 1");
  Pow2Scan scan;
  for (int d1 = 1; d1 <= 9; ++d1) {
    for (int d2 = 0; d2 <= 9; ++d2) {
      if (d1 == d2) continue;
      for (int lo = 1; lo <= max_outer; ++lo) {
        for (int lm = 1; lm <= max_middle; ++lm) {
          PalindromeDecomposition d{d1, d2, lo, lm};
          BigInt v = palindrome_value(d);
          ++scan.candidates;
          if (is_power_of_two(v)) scan.hits.push_back({v, d});
        }
      }
    }
  }
  return scan;
}

DivisibilityReport verify_divisibility_elimination() {
  DivisibilityReport report;
  const BigInt sixteen = 16;
  for (int d1 = 1; d1 <= 9; ++d1) {
    for (int len = 4; len <= 40; ++len) {
      BigInt v = d1 * (pow10(static_cast<unsigned long>(len)) - 1);
      bool holds = !mpz_divisible_p(v.get_mpz_t(), sixteen.get_mpz_t());
      report.cases.push_back({'a', d1, -1, len, v, holds});
      if (!holds) ++report.counterexamples;
    }
  }
  const BigInt two14 = pow2(14);
  for (int d1 = 1; d1 <= 9; ++d1) {
    for (int d2 = 0; d2 <= 9; ++d2) {
      if (d1 == d2) continue;
      for (int len = 1; len <= 3; ++len) {
        BigInt v = (d1 - d2) * pow10(static_cast<unsigned long>(len)) - d1;
        bool holds = v != 0 && abs(v) < two14 && !mpz_divisible_p(v.get_mpz_t(), two14.get_mpz_t());
        report.cases.push_back({'b', d1, d2, len, v, holds});
        if (!holds) ++report.counterexamples;
      }
    }
  }
  return report;
}

namespace {

// Cheap rejection on the last 19 digits: the low end of a candidate reads
// d2..d2 d1..d1 or d1..d1 d2..d2 d1..d1, so at most three runs and a nonzero
// final digit.
bool tail_may_match(const BigInt& v) {
  constexpr unsigned long kTail = 10000000000000000000UL;
  unsigned long r = mpz_fdiv_ui(v.get_mpz_t(), kTail);
  if (r % 10 == 0) return false;
  int runs = 1;
  unsigned long last = r % 10;
  r /= 10;
  for (int i = 1; i < 19; ++i) {
    unsigned long d = r % 10;
    r /= 10;
    if (d != last) {
      if (++runs > 3) return false;
      last = d;
    }
  }
  return true;
}

}  // namespace

std::vector<Solution> search_row(int order, long index_lo, long index_hi) {
  std::vector<Solution> out;
  if (index_hi < index_lo) return out;
  std::vector<BigInt> f = window_terms(order, index_hi);
  const BigInt big = pow10(19);
  for (long i = std::max<long>(index_lo, 1); i <= index_hi; ++i) {
    const BigInt& v = f[static_cast<std::size_t>(i - 1)];
    if (v >= big && !tail_may_match(v)) continue;
    if (auto d = decompose_palindrome(v)) out.push_back({order, i, v, *d});
  }
  return out;
}

std::vector<Solution> search_solutions(int order_lo, int order_hi, long index_lo, long index_hi) {
  if (order_lo < 2 || order_hi < order_lo) throw std::invalid_argument("search_solutions: need 2 <= order_lo <= order_hi");
  if (index_lo < 1) throw std::invalid_argument("search_solutions: index_lo must be >= 1");
  const std::size_t rows = static_cast<std::size_t>(order_hi - order_lo + 1);
  std::vector<std::vector<Solution>> per_row(rows);
  parallel_for(rows, [&](std::size_t i) {
    per_row[i] = search_row(order_lo + static_cast<int>(i), index_lo, index_hi);
  });
  std::vector<Solution> all;
  for (auto& row : per_row) all.insert(all.end(), row.begin(), row.end());
  return all;
}

}  // namespace kfibpal::kfib
