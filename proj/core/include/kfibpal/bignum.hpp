#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kfibpal {

/// Arbitrary-precision integer. Carrier for F_n^{(k)}, powers of ten and the
/// lattice entries.
using BigInt = mpz_class;

/// Exact rational, always kept in canonical (reduced) form.
using BigRational = mpq_class;

/// Parses an exact decimal literal such as "16.5", "-3", "2.1e178" or
/// "1E-3" into a rational without any rounding.
///
/// Throws std::invalid_argument on malformed input.
BigRational parse_decimal(std::string_view text);

/// Like parse_decimal but requires the value to be an integer
/// ("2.1e178" is fine, "2.15e1" is not).
BigInt parse_decimal_integer(std::string_view text);

/// Number of decimal digits of |n| (0 has one digit).
std::size_t decimal_digits(const BigInt& n);

/// 10^e.
BigInt pow10(unsigned long e);

/// 2^e.
BigInt pow2(unsigned long e);

/// True iff n > 0 and n is a power of two.
bool is_power_of_two(const BigInt& n);

/// Short scientific rendering like "2.1e178" for logs and reports. The
/// output is rounded and must not be used where exactness matters.
std::string to_sci(const BigInt& n, int significant = 4);
std::string to_sci(const BigRational& q, int significant = 4);

/// Canonical rational rendering "p/q" (or "p" when q = 1).
std::string to_string(const BigRational& q);

}  // namespace kfibpal
