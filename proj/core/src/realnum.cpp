#include "kfibpal/realnum.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kfibpal/kfib.hpp"

namespace kfibpal::realnum {

mpfr_prec_t bits_for_digits(int digits) {
  if (digits < 1) digits = 1;
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

// ---------------------------------------------------------------- BigFloat

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Steal the limbs; leave `other` as a valid small zero.
  value_[0] = other.value_[0];
  mpfr_init2(other.value_, MPFR_PREC_MIN);
  mpfr_set_zero(other.value_, 1);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::str(int significant) const {
  std::vector<char> buf(static_cast<std::size_t>(significant) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant, value_);
  return std::string(buf.data());
}

BigRational BigFloat::to_rational() const {
  if (mpfr_zero_p(value_)) return BigRational(0);
  BigInt mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
  BigRational q(mant);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

// ------------------------------------------------------------ RealInterval

namespace {

int join_digits(const RealInterval& a, const RealInterval& b) {
  return std::max(a.digits(), b.digits());
}

}  // namespace

RealInterval::RealInterval(int digits)
    : lo_(bits_for_digits(digits)), hi_(bits_for_digits(digits)), digits_(digits) {}

RealInterval::RealInterval(BigFloat lo, BigFloat hi, int digits)
    : lo_(std::move(lo)), hi_(std::move(hi)), digits_(digits) {}

RealInterval RealInterval::exact(long v, int digits) {
  auto bits = bits_for_digits(digits);
  BigFloat lo(bits), hi(bits);
  mpfr_set_si(lo.get(), v, MPFR_RNDD);
  mpfr_set_si(hi.get(), v, MPFR_RNDU);
  return RealInterval(std::move(lo), std::move(hi), digits);
}

RealInterval RealInterval::exact(const BigInt& v, int digits) {
  auto bits = bits_for_digits(digits);
  BigFloat lo(bits), hi(bits);
  mpfr_set_z(lo.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), v.get_mpz_t(), MPFR_RNDU);
  return RealInterval(std::move(lo), std::move(hi), digits);
}

RealInterval RealInterval::exact(const BigRational& v, int digits) {
  auto bits = bits_for_digits(digits);
  BigFloat lo(bits), hi(bits);
  mpfr_set_q(lo.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), v.get_mpq_t(), MPFR_RNDU);
  return RealInterval(std::move(lo), std::move(hi), digits);
}

RealInterval RealInterval::decimal(std::string_view text, int digits) {
  return exact(parse_decimal(text), digits);
}

RealInterval RealInterval::from_bounds(const BigFloat& lo, const BigFloat& hi, int digits) {
  if (mpfr_cmp(lo.get(), hi.get()) > 0) {
    throw std::invalid_argument("RealInterval::from_bounds: lo > hi");
  }
  auto bits = bits_for_digits(digits);
  BigFloat l(bits), h(bits);
  mpfr_set(l.get(), lo.get(), MPFR_RNDD);
  mpfr_set(h.get(), hi.get(), MPFR_RNDU);
  return RealInterval(std::move(l), std::move(h), digits);
}

BigFloat RealInterval::width() const {
  BigFloat w(bits());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

BigFloat RealInterval::magnitude() const {
  BigFloat a(bits()), b(bits());
  mpfr_abs(a.get(), lo_.get(), MPFR_RNDU);
  mpfr_abs(b.get(), hi_.get(), MPFR_RNDU);
  return mpfr_cmp(a.get(), b.get()) >= 0 ? a : b;
}

bool RealInterval::contains(const BigRational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool RealInterval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool RealInterval::is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool RealInterval::is_negative() const { return mpfr_sgn(hi_.get()) < 0; }
bool RealInterval::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

bool RealInterval::certainly_below(const RealInterval& other) const {
  return mpfr_less_p(hi_.get(), other.lo_.get()) != 0;
}

bool RealInterval::certainly_below(const BigRational& q) const {
  return mpfr_cmp_q(hi_.get(), q.get_mpq_t()) < 0;
}

bool RealInterval::certainly_above(const BigRational& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) > 0;
}

RealInterval RealInterval::with_digits(int digits) const {
  return from_bounds(lo_, hi_, digits);
}

std::string RealInterval::str(int significant) const {
  return "[" + lo_.str(significant) + ", " + hi_.str(significant) + "]";
}

std::string RealInterval::mid_str(int significant) const {
  BigFloat m(bits() + 2);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.str(significant);
}

RealInterval RealInterval::operator-() const {
  BigFloat lo(bits()), hi(bits());
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return RealInterval(std::move(lo), std::move(hi), digits_);
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  int d = join_digits(a, b);
  auto bits = bits_for_digits(d);
  BigFloat lo(bits), hi(bits);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return RealInterval(std::move(lo), std::move(hi), d);
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  int d = join_digits(a, b);
  auto bits = bits_for_digits(d);
  BigFloat lo(bits), hi(bits);
  mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return RealInterval(std::move(lo), std::move(hi), d);
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  int d = join_digits(a, b);
  auto bits = bits_for_digits(d);
  BigFloat lo(bits), hi(bits), t(bits);
  mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return RealInterval(std::move(lo), std::move(hi), d);
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
  if (b.contains_zero()) throw std::domain_error("RealInterval division by an interval containing zero");
  int d = join_digits(a, b);
  auto bits = bits_for_digits(d);
  BigFloat lo(bits), hi(bits), t(bits);
  mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return RealInterval(std::move(lo), std::move(hi), d);
}

RealInterval operator*(const RealInterval& a, const BigInt& s) {
  auto bits = a.bits();
  BigFloat lo(bits), hi(bits);
  if (s >= 0) {
    mpfr_mul_z(lo.get(), a.lo_.get(), s.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi.get(), a.hi_.get(), s.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(lo.get(), a.hi_.get(), s.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi.get(), a.lo_.get(), s.get_mpz_t(), MPFR_RNDU);
  }
  return RealInterval(std::move(lo), std::move(hi), a.digits_);
}

RealInterval operator+(const RealInterval& a, long s) {
  return a + RealInterval::exact(s, a.digits());
}

RealInterval operator-(const RealInterval& a, long s) {
  return a - RealInterval::exact(s, a.digits());
}

RealInterval operator*(const RealInterval& a, long s) { return a * BigInt(s); }

RealInterval operator/(const RealInterval& a, long s) {
  return a / RealInterval::exact(s, a.digits());
}

RealInterval log(const RealInterval& x) {
  if (!x.is_positive()) throw std::domain_error("log of an interval that is not strictly positive");
  BigFloat lo(x.bits()), hi(x.bits());
  mpfr_log(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi().get(), MPFR_RNDU);
  return RealInterval::from_bounds(lo, hi, x.digits());
}

RealInterval exp(const RealInterval& x) {
  BigFloat lo(x.bits()), hi(x.bits());
  mpfr_exp(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.hi().get(), MPFR_RNDU);
  return RealInterval::from_bounds(lo, hi, x.digits());
}

RealInterval sqrt(const RealInterval& x) {
  if (mpfr_sgn(x.lo().get()) < 0) throw std::domain_error("sqrt of an interval with negative part");
  BigFloat lo(x.bits()), hi(x.bits());
  mpfr_sqrt(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), x.hi().get(), MPFR_RNDU);
  return RealInterval::from_bounds(lo, hi, x.digits());
}

RealInterval pow(const RealInterval& x, unsigned long e) {
  if (mpfr_sgn(x.lo().get()) < 0) throw std::domain_error("pow: interval must be non-negative");
  BigFloat lo(x.bits()), hi(x.bits());
  mpfr_pow_ui(lo.get(), x.lo().get(), e, MPFR_RNDD);
  mpfr_pow_ui(hi.get(), x.hi().get(), e, MPFR_RNDU);
  return RealInterval::from_bounds(lo, hi, x.digits());
}

RealInterval pow(const RealInterval& x, const RealInterval& y) {
  return exp(y * log(x));
}

RealInterval max(const RealInterval& a, const RealInterval& b) {
  int d = join_digits(a, b);
  const BigFloat& lo = mpfr_cmp(a.lo().get(), b.lo().get()) >= 0 ? a.lo() : b.lo();
  const BigFloat& hi = mpfr_cmp(a.hi().get(), b.hi().get()) >= 0 ? a.hi() : b.hi();
  return RealInterval::from_bounds(lo, hi, d);
}

RealInterval log_enclosure(const RealInterval& x) { return log(x); }

// ------------------------------------------------------------- dominant root

CharPoly::CharPoly(int order_) : order(order_) {
  if (order < 2) throw std::invalid_argument("CharPoly: k must be >= 2");
}

RealInterval CharPoly::eval(const RealInterval& x) const {
  RealInterval p = RealInterval::exact(1L, x.digits());
  for (int i = 0; i < order; ++i) p = p * x - 1;
  return p;
}

namespace {

// Sign of Psi_k at x through (x - 1) Psi_k(x) = x^k (x - 2) + 1, which has
// no cancellation-prone sum; valid for x > 1. Returns 0 when undecided.
int psi_sign(int order, const BigFloat& x, int digits) {
  RealInterval xi = RealInterval::from_bounds(x, x, digits);
  RealInterval g = pow(xi, static_cast<unsigned long>(order)) * (xi - 2L) + 1L;
  if (g.is_positive()) return 1;
  if (g.is_negative()) return -1;
  return 0;
}

}  // namespace

DominantRoot alpha(int order, int digits) {
  if (order < 2) throw std::invalid_argument("alpha: k must be >= 2");
  if (digits < 1) throw std::invalid_argument("alpha: digits must be positive");

  // Working precision: target digits plus room for x^k growth.
  const int work_digits = digits + 20 + static_cast<int>(std::ceil(order * 0.30103));
  const mpfr_prec_t bits = bits_for_digits(work_digits);

  BigFloat a(bits), b(bits), floor_bound(bits), target(bits);
  mpfr_set_ui(b.get(), 2, MPFR_RNDN);
  mpfr_set_ui(floor_bound.get(), 1, MPFR_RNDN);
  mpfr_div_2ui(floor_bound.get(), floor_bound.get(), static_cast<unsigned long>(order - 1), MPFR_RNDN);
  mpfr_ui_sub(floor_bound.get(), 2, floor_bound.get(), MPFR_RNDN);  // exact: 2 - 2^{1-k}
  mpfr_set(a.get(), floor_bound.get(), MPFR_RNDN);
  mpfr_set_ui(target.get(), 10, MPFR_RNDD);
  mpfr_pow_si(target.get(), target.get(), -digits, MPFR_RNDD);

  if (psi_sign(order, a, work_digits) >= 0 || psi_sign(order, b, work_digits) <= 0) {
    throw std::runtime_error("alpha: no certified sign change on (2(1-2^-k), 2)");
  }

  BigFloat mid(bits), width(bits);
  auto bisect = [&]() {
    mpfr_add(mid.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    int s = psi_sign(order, mid, work_digits);
    if (s < 0) {
      mpfr_set(a.get(), mid.get(), MPFR_RNDN);
    } else if (s > 0) {
      mpfr_set(b.get(), mid.get(), MPFR_RNDN);
    } else {
      throw std::runtime_error("alpha: undecided sign during bisection");
    }
  };

  for (int i = 0; i < 48; ++i) bisect();

  // Newton on g(x) = x^{k+1} - 2x^k + 1 from the bracket midpoint.
  BigFloat x(bits), gx(bits), dg(bits), t(bits), step(bits);
  mpfr_add(x.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_div_2ui(x.get(), x.get(), 1, MPFR_RNDN);
  for (int it = 0; it < 64; ++it) {
    mpfr_pow_ui(t.get(), x.get(), static_cast<unsigned long>(order - 1), MPFR_RNDN);  // x^{k-1}
    mpfr_mul(gx.get(), t.get(), x.get(), MPFR_RNDN);                                // x^k
    mpfr_sub_ui(step.get(), x.get(), 2, MPFR_RNDN);
    mpfr_mul(gx.get(), gx.get(), step.get(), MPFR_RNDN);
    mpfr_add_ui(gx.get(), gx.get(), 1, MPFR_RNDN);
    // g'(x) = x^{k-1} ((k+1) x - 2k)
    mpfr_mul_ui(dg.get(), x.get(), static_cast<unsigned long>(order + 1), MPFR_RNDN);
    mpfr_sub_ui(dg.get(), dg.get(), static_cast<unsigned long>(2 * order), MPFR_RNDN);
    mpfr_mul(dg.get(), dg.get(), t.get(), MPFR_RNDN);
    if (mpfr_zero_p(dg.get())) break;
    mpfr_div(step.get(), gx.get(), dg.get(), MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
    if (mpfr_zero_p(step.get()) || mpfr_get_exp(step.get()) < -static_cast<mpfr_exp_t>(bits) + 8) break;
  }

  // Try to shrink the bracket around the Newton iterate.
  BigFloat r(bits), cand(bits);
  mpfr_div_2ui(r.get(), target.get(), 3, MPFR_RNDD);
  mpfr_sub(cand.get(), x.get(), r.get(), MPFR_RNDD);
  if (mpfr_greater_p(cand.get(), a.get()) && mpfr_less_p(cand.get(), b.get()) &&
      psi_sign(order, cand, work_digits) < 0) {
    mpfr_set(a.get(), cand.get(), MPFR_RNDN);
  }
  mpfr_add(cand.get(), x.get(), r.get(), MPFR_RNDU);
  if (mpfr_greater_p(cand.get(), a.get()) && mpfr_less_p(cand.get(), b.get()) &&
      psi_sign(order, cand, work_digits) > 0) {
    mpfr_set(b.get(), cand.get(), MPFR_RNDN);
  }

  // Bisection fallback until narrow enough and strictly inside the
  // localisation interval.
  BigFloat two(bits);
  mpfr_set_ui(two.get(), 2, MPFR_RNDN);
  for (long guard = 0;; ++guard) {
    mpfr_sub(width.get(), b.get(), a.get(), MPFR_RNDU);
    bool narrow = mpfr_less_p(width.get(), target.get());
    bool inside = mpfr_greater_p(a.get(), floor_bound.get()) && mpfr_less_p(b.get(), two.get());
    if (narrow && inside) break;
    if (guard > 4L * bits) throw std::runtime_error("alpha: failed to contract enclosure");
    bisect();
  }

  DominantRoot root{order, RealInterval::from_bounds(a, b, work_digits), RealInterval(digits),
                    RealInterval(digits)};
  CharPoly psi(order);
  root.psi_at_lo = psi.eval(RealInterval::from_bounds(a, a, work_digits));
  root.psi_at_hi = psi.eval(RealInterval::from_bounds(b, b, work_digits));
  return root;
}

RealInterval f_k_at(int order, const RealInterval& x) {
  RealInterval num = x - 1L;
  RealInterval den = (x - 2L) * static_cast<long>(order + 1) + 2L;
  if (den.contains_zero()) throw std::domain_error("f_k: denominator interval contains zero");
  return num / den;
}

RealInterval binet_residual(int order, long index, int digits) {
  if (order < 2) throw std::invalid_argument("binet_residual: k must be >= 2");
  if (index < 2) throw std::invalid_argument("binet_residual: n must be >= 2");
  DominantRoot root = alpha(order, digits);
  const RealInterval& a = root.enclosure;
  RealInterval dominant = f_k_at(order, a) * pow(a, static_cast<unsigned long>(index - 1));
  BigInt fib = kfib::fib_k({order, index});
  RealInterval r = RealInterval::exact(fib, a.digits()) - dominant;
  if (mpfr_cmp_d(r.width().get(), 0.25) >= 0) {
    throw PrecisionError("binet_residual: enclosure too wide, raise precision");
  }
  return r;
}

bool pow2_residual_check(int order, long index) {
  if (order < 2 || index < 2) throw std::invalid_argument("pow2_residual_check: need k >= 2 and n >= 2");
  // n < 2^{k/2}  <=>  n^2 < 2^k
  if (BigInt(index) * BigInt(index) >= pow2(static_cast<unsigned long>(order))) {
    throw std::invalid_argument("pow2_residual_check: requires n < 2^(k/2)");
  }
  BigInt diff = abs(kfib::fib_k({order, index}) - pow2(static_cast<unsigned long>(index - 2)));
  // |diff| < 2^{n-2} * 2 / 2^{k/2}  <=>  diff^2 * 2^k < 2^{2(n-2)} * 4
  BigInt lhs = diff * diff * pow2(static_cast<unsigned long>(order));
  BigInt rhs = pow2(static_cast<unsigned long>(2 * (index - 2) + 2));
  return lhs < rhs;
}

ScaledFloor floor_scaled(const RealInterval& eta, const BigInt& scale) {
  RealInterval scaled = eta * scale;
  BigInt lo, hi;
  mpfr_get_z(lo.get_mpz_t(), scaled.lo().get(), MPFR_RNDD);
  mpfr_get_z(hi.get_mpz_t(), scaled.hi().get(), MPFR_RNDD);
  return {lo, lo == hi};
}

}  // namespace kfibpal::realnum
