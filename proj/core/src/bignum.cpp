#include "kfibpal/bignum.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include <mpfr.h>

namespace kfibpal {

BigRational parse_decimal(std::string_view text) {
  auto fail = [&]() -> BigRational {
    throw std::invalid_argument("malformed decimal literal: '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) return fail();
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') return fail();
    ++i;
    std::string exp_text(text.substr(i));
    if (exp_text.empty()) return fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != exp_text.size()) return fail();
  }
  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long shift = exponent - frac_digits;
  BigRational out;
  if (shift >= 0) {
    out = BigRational(mantissa * pow10(static_cast<unsigned long>(shift)));
  } else {
    out = BigRational(mantissa, pow10(static_cast<unsigned long>(-shift)));
    out.canonicalize();
  }
  return out;
}

BigInt parse_decimal_integer(std::string_view text) {
  BigRational q = parse_decimal(text);
  if (q.get_den() != 1) {
    throw std::invalid_argument("decimal literal is not an integer: '" + std::string(text) + "'");
  }
  return q.get_num();
}

std::size_t decimal_digits(const BigInt& n) {
  if (n == 0) return 1;
  // mpz_sizeinbase may overshoot by one for base 10.
  std::size_t guess = mpz_sizeinbase(n.get_mpz_t(), 10);
  BigInt a = abs(n);
  if (a < pow10(guess - 1)) return guess - 1;
  return guess;
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

BigInt pow2(unsigned long e) {
  BigInt r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
  return r;
}

bool is_power_of_two(const BigInt& n) {
  if (n <= 0) return false;
  return mpz_popcount(n.get_mpz_t()) == 1;
}

namespace {

std::string sci_from_mpfr(mpfr_t x, int significant) {
  if (mpfr_zero_p(x)) return "0";
  std::vector<char> buf(64 + static_cast<std::size_t>(significant));
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant, x);
  return std::string(buf.data());
}

}  // namespace

std::string to_sci(const BigInt& n, int significant) {
  mpfr_t x;
  mpfr_init2(x, 128);
  mpfr_set_z(x, n.get_mpz_t(), MPFR_RNDN);
  std::string s = sci_from_mpfr(x, significant);
  mpfr_clear(x);
  return s;
}

std::string to_sci(const BigRational& q, int significant) {
  mpfr_t x;
  mpfr_init2(x, 128);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
  std::string s = sci_from_mpfr(x, significant);
  mpfr_clear(x);
  return s;
}

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace kfibpal
