#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <mpfr.h>

#include "kfibpal/bignum.hpp"

namespace kfibpal::realnum {

/// Raised when an enclosure is too wide for the caller's purpose; the
/// remedy is always to retry at a higher precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary precision used for a requested number of decimal digits.
mpfr_prec_t bits_for_digits(int digits);

/// Owning wrapper around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 64);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Rounded decimal rendering with `significant` digits.
  std::string str(int significant = 12) const;
  /// Exact value as a rational (every finite binary float is one).
  BigRational to_rational() const;

 private:
  mpfr_t value_;
};

/// A closed interval [lo, hi] of reals whose endpoints are rounded outward
/// so that every operation yields an enclosure of the exact result.
///
/// Precision is tracked in decimal digits; binary operations work at the
/// larger precision of their two operands.
class RealInterval {
 public:
  /// The point interval [0, 0].
  explicit RealInterval(int digits = 30);

  static RealInterval exact(long v, int digits);
  static RealInterval exact(const BigInt& v, int digits);
  static RealInterval exact(const BigRational& v, int digits);
  /// Exact decimal literal such as "16.5" or "2.1e178".
  static RealInterval decimal(std::string_view text, int digits);
  /// [lo, hi] from two enclosing endpoints; throws if lo > hi.
  static RealInterval from_bounds(const BigFloat& lo, const BigFloat& hi, int digits);

  int digits() const { return digits_; }
  mpfr_prec_t bits() const { return lo_.bits(); }
  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }

  /// Upper bound on hi - lo.
  BigFloat width() const;
  /// Upper bound on max(|lo|, |hi|).
  BigFloat magnitude() const;

  bool contains(const BigRational& q) const;
  bool contains_zero() const;
  bool is_positive() const;  // lo > 0
  bool is_negative() const;  // hi < 0
  bool is_point() const;
  /// hi < other.lo, i.e. every element is below every element of `other`.
  bool certainly_below(const RealInterval& other) const;
  bool certainly_below(const BigRational& q) const;
  bool certainly_above(const BigRational& q) const;

  /// Same interval re-rounded (outward) to a different precision.
  RealInterval with_digits(int digits) const;

  /// "[lo, hi]" rendered with `significant` digits per endpoint.
  std::string str(int significant = 20) const;
  /// Midpoint rendering for reports.
  std::string mid_str(int significant = 12) const;

  RealInterval operator-() const;
  friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
  /// Throws std::domain_error if the divisor contains zero.
  friend RealInterval operator/(const RealInterval& a, const RealInterval& b);

  friend RealInterval operator*(const RealInterval& a, const BigInt& s);
  friend RealInterval operator*(const BigInt& s, const RealInterval& a) { return a * s; }
  friend RealInterval operator+(const RealInterval& a, long s);
  friend RealInterval operator-(const RealInterval& a, long s);
  friend RealInterval operator*(const RealInterval& a, long s);
  friend RealInterval operator/(const RealInterval& a, long s);

 private:
  RealInterval(BigFloat lo, BigFloat hi, int digits);

  BigFloat lo_;
  BigFloat hi_;
  int digits_;
};

/// Natural logarithm; throws std::domain_error unless lo > 0.
RealInterval log(const RealInterval& x);
RealInterval exp(const RealInterval& x);
/// Throws std::domain_error if lo < 0.
RealInterval sqrt(const RealInterval& x);
/// x^e for x with lo >= 0 (throws otherwise).
RealInterval pow(const RealInterval& x, unsigned long e);
/// x^y for x with lo > 0, via exp(y log x).
RealInterval pow(const RealInterval& x, const RealInterval& y);
RealInterval max(const RealInterval& a, const RealInterval& b);

/// Enclosure of the natural logarithm; throws on non-positive input.
RealInterval log_enclosure(const RealInterval& x);

/// Psi_k(x) = x^k - x^{k-1} - ... - x - 1.
struct CharPoly {
  int order;

  explicit CharPoly(int order);
  /// Horner evaluation in interval arithmetic.
  RealInterval eval(const RealInterval& x) const;
};

/// Enclosure of the dominant root alpha(k) of Psi_k together with the
/// sign-change certificate: Psi_k(lo) < 0 < Psi_k(hi).
struct DominantRoot {
  int order;
  RealInterval enclosure;
  RealInterval psi_at_lo;
  RealInterval psi_at_hi;
};

/// Certified enclosure of alpha(k) of width below 10^-digits inside
/// (2(1 - 2^-k), 2). Bisection isolates, Newton contracts, and the final
/// interval is accepted only after an interval sign check at both ends.
DominantRoot alpha(int order, int digits);

/// f_k(x) = (x - 1) / (2 + (k + 1)(x - 2)). Throws std::domain_error when the
/// denominator encloses zero.
RealInterval f_k_at(int order, const RealInterval& x);

/// Enclosure of F_n^{(k)} - f_k(alpha) alpha^{n-1}. Throws PrecisionError
/// if the enclosure is 1/4 wide or wider.
RealInterval binet_residual(int order, long index, int digits);

/// Exact check of |F_n^{(k)} - 2^{n-2}| < 2^{n-2} * 2 / 2^{k/2}.
/// Precondition n < 2^{k/2} (std::invalid_argument otherwise).
bool pow2_residual_check(int order, long index);

struct ScaledFloor {
  BigInt value;
  bool stable;
};

/// floor(C * eta), reported stable only when both endpoints of the scaled
/// enclosure have the same floor.
ScaledFloor floor_scaled(const RealInterval& eta, const BigInt& scale);

}  // namespace kfibpal::realnum
