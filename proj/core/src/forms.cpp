#include "kfibpal/forms.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace kfibpal::pipeline {

using realnum::RealInterval;

std::string form_name(Form form) {
  switch (form) {
    case Form::outer: return "outer";
    case Form::middle: return "middle";
    case Form::pow2_outer: return "pow2-outer";
    case Form::pow2_middle: return "pow2-middle";
  }
  return "?";
}

BigInt shifted_leading(int d1, int d2, long outer) {
  return d1 * pow10(static_cast<unsigned long>(outer)) - (d1 - d2);
}

namespace {

std::mutex cache_mutex;
std::map<std::pair<int, int>, RootLogs> cache;

std::map<std::pair<long, int>, RealInterval> small_logs;

// Logarithms of single digits and 10 recur in every form at a handful of precisions.
RealInterval ln(long v, int digits) {
  if (v > 10) return realnum::log(RealInterval::exact(v, digits));
  {
    std::lock_guard lock(cache_mutex);
    auto it = small_logs.find({v, digits});
    if (it != small_logs.end()) return it->second;
  }
  RealInterval out = realnum::log(RealInterval::exact(v, digits));
  std::lock_guard lock(cache_mutex);
  small_logs.emplace(std::make_pair(v, digits), out);
  return out;
}
RealInterval ln(const BigInt& v, int digits) { return realnum::log(RealInterval::exact(v, digits)); }

void check_spec(const LinearFormSpec& s) {
  if (s.order < 2) throw std::invalid_argument("linear form: order must be >= 2");
  if (s.d1 < 1 || s.d1 > 9) throw std::invalid_argument("linear form: d1 must be in [1, 9]");
  bool mid = s.form == Form::middle || s.form == Form::pow2_middle;
  if (mid && (s.d2 < 0 || s.d2 > 9 || s.d2 == s.d1 || s.outer < 1)) {
    throw std::invalid_argument("linear form: middle forms need a distinct d2 and outer >= 1");
  }
}

long strip(BigInt& v, unsigned long p) {
  long e = 0;
  while (v != 0 && mpz_divisible_ui_p(v.get_mpz_t(), p)) {
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
    ++e;
  }
  return e;
}

}  // namespace

RootLogs root_logs(int order, int digits) {
  {
    std::lock_guard lock(cache_mutex);
    auto it = cache.find({order, digits});
    if (it != cache.end()) return it->second;
  }
  realnum::DominantRoot root = realnum::alpha(order, digits + 10);
  RootLogs out;
  out.order = order;
  out.digits = digits;
  out.alpha = root.enclosure.with_digits(digits + 10);
  out.log_alpha = realnum::log(out.alpha);
  out.log_9f = realnum::log(realnum::f_k_at(order, out.alpha) * 9L);
  std::lock_guard lock(cache_mutex);
  cache.emplace(std::make_pair(order, digits), out);
  return out;
}

std::vector<RealInterval> linear_form_etas(const LinearFormSpec& spec, int digits) {
  check_spec(spec);
  const RealInterval log10 = ln(10L, digits);
  const RealInterval log2 = ln(2L, digits);
  switch (spec.form) {
    case Form::outer: {
      RootLogs r = root_logs(spec.order, digits);
      return {r.log_alpha, -log10, r.log_9f - ln(static_cast<long>(spec.d1), digits)};
    }
    case Form::middle: {
      RootLogs r = root_logs(spec.order, digits);
      return {r.log_alpha, -log10, r.log_9f - ln(shifted_leading(spec.d1, spec.d2, spec.outer), digits)};
    }
    case Form::pow2_outer:
      return {ln(static_cast<long>(spec.d1), digits) - ln(9L, digits), log10, -log2};
    case Form::pow2_middle:
      return {ln(shifted_leading(spec.d1, spec.d2, spec.outer), digits) - ln(9L, digits), log10, -log2};
  }
  throw std::logic_error("linear_form_etas: unknown form");
}

std::optional<SmoothSplit> smooth_split(const BigRational& q) {
  if (q <= 0) return std::nullopt;
  BigRational c = q;
  c.canonicalize();
  BigInt num = c.get_num(), den = c.get_den();
  SmoothSplit s;
  s.twos = strip(num, 2) - strip(den, 2);
  s.fives = strip(num, 5) - strip(den, 5);
  if (num != 1 || den != 1) return std::nullopt;
  return s;
}

std::vector<RealInterval> LatticeForm::etas(int digits) const {
  if (folded) return {ln(10L, digits), -ln(2L, digits)};
  std::vector<RealInterval> e = linear_form_etas(spec, digits);
  if (targeted) e.erase(e.begin());
  return e;
}

std::vector<RealInterval> LatticeForm::terms(int digits) const {
  if (folded) return etas(digits);
  std::vector<RealInterval> e = linear_form_etas(spec, digits);
  if (targeted) return {e[1], e[2], e[0]};
  return e;
}

LatticeForm lattice_form(const LinearFormSpec& spec, const BigInt& bound, bool targeted) {
  check_spec(spec);
  LatticeForm out;
  out.spec = spec;
  std::optional<SmoothSplit> split;
  if (spec.form == Form::pow2_outer) split = smooth_split(BigRational(spec.d1, 9));
  if (spec.form == Form::pow2_middle) split = smooth_split(BigRational(shifted_leading(spec.d1, spec.d2, spec.outer), 9));
  if (split) {
    // log(q) = fives log 10 - (twos - fives) log(1/2)
    out.folded = true;
    out.split = *split;
    out.coeff_bounds = {bound + std::abs(split->fives), bound + std::abs(split->twos - split->fives)};
  } else if (spec.form == Form::outer || spec.form == Form::middle) {
    out.coeff_bounds = {bound, bound, 1};
  } else if (targeted) {
    out.targeted = true;
    out.coeff_bounds = {bound, bound};
  } else {
    out.coeff_bounds = {1, bound, bound};
  }
  return out;
}

NonvanishingResult nonvanishing_check(const LinearFormSpec& spec, long index, long middle, int max_digits) {
  check_spec(spec);
  if (index < 2 || middle < 1 || spec.outer < 1) throw std::invalid_argument("nonvanishing_check: need n >= 2, lengths >= 1");
  const long tens = (spec.form == Form::outer || spec.form == Form::pow2_outer) ? 2 * spec.outer + middle : spec.outer + middle;
  NonvanishingResult out;
  if (spec.form == Form::pow2_outer || spec.form == Form::pow2_middle) {
    // lead 10^tens = 9 2^{n-2} is impossible: 5 divides the left side only.
    BigInt lead = spec.form == Form::pow2_outer ? BigInt(spec.d1) : shifted_leading(spec.d1, spec.d2, spec.outer);
    BigInt rhs_mod5;
    mpz_powm_ui(rhs_mod5.get_mpz_t(), BigInt(2).get_mpz_t(), static_cast<unsigned long>(index - 2), BigInt(5).get_mpz_t());
    rhs_mod5 = (9 * rhs_mod5) % 5;
    out.certified = tens >= 1 && lead != 0 && rhs_mod5 != 0;
    out.method = "exact: 5 | lead * 10^" + std::to_string(tens) + ", 5 does not divide 9 * 2^" + std::to_string(index - 2);
    return out;
  }
  for (int digits = 60; digits <= max_digits; digits *= 2) {
    std::vector<RealInterval> e = linear_form_etas(spec, digits);
    RealInterval v = e[0] * (index - 1) + e[1] * tens + e[2];
    if (!v.contains_zero()) {
      out.certified = true;
      out.digits = digits;
      out.method = "interval: 0 not in " + v.mid_str();
      return out;
    }
  }
  out.method = "interval enclosure still contains 0 at " + std::to_string(max_digits) + " digits";
  return out;
}

}  // namespace kfibpal::pipeline
