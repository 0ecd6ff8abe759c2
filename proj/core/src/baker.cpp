#include "kfibpal/baker.hpp"

#include <cmath>
#include <stdexcept>

namespace kfibpal::baker {

namespace {

RealInterval num(const char* text) { return RealInterval::decimal(text, kDigits); }
RealInterval num(long v) { return RealInterval::exact(v, kDigits); }
RealInterval num(const BigInt& v) { return RealInterval::exact(v, kDigits); }

RealInterval ln(const RealInterval& x) { return realnum::log(x); }
RealInterval ln(long v) { return realnum::log(num(v)); }

RealInterval powi(const RealInterval& x, unsigned long e) {
  if (x.is_negative() || x.contains_zero()) {
    RealInterval r = num(1L);
    for (unsigned long i = 0; i < e; ++i) r = r * x;
    return r;
  }
  return realnum::pow(x, e);
}

bool le(const RealInterval& a, const RealInterval& b) {
  return mpfr_lessequal_p(a.hi().get(), b.lo().get()) != 0;
}

BigInt ceil_hi(const RealInterval& x) {
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), x.hi().get(), MPFR_RNDU);
  return z;
}

RealInterval index_cap_poly_at(const RealInterval& order) {
  return num("3e31") * powi(order, 8) * powi(ln(order), 5);
}

}  // namespace

HeightValue height_rational(const BigInt& p, const BigInt& q) {
  if (q == 0) throw std::invalid_argument("height_rational: zero denominator");
  BigRational r(p, q);
  r.canonicalize();
  BigInt a = abs(r.get_num());
  BigInt b = r.get_den();
  BigInt top = a > b ? a : b;
  return {ln(num(top)), "h(" + to_string(r) + ") = log " + top.get_str()};
}

std::vector<HeightValue> height_bounds_for_gammas(int order, std::optional<long> outer,
                                                  std::optional<std::pair<int, int>> digits) {
  if (order < 2) throw std::invalid_argument("height_bounds_for_gammas: k must be >= 2");
  const RealInterval log9 = ln(9L), logk = ln(static_cast<long>(order));
  std::vector<HeightValue> out;
  if (!outer) {
    out.push_back({log9 + logk * 3L + log9, "h(9 f_k(alpha)/d1) < log 9 + 3 log k + log 9"});
  } else {
    RealInterval hd = num(0L);
    std::string how;
    if (digits) {
      auto [d1, d2] = *digits;
      BigInt shifted = d1 * pow10(static_cast<unsigned long>(*outer)) - (d1 - d2);
      hd = ln(num(shifted));
      how = "log D";
    } else {
      hd = ln(10L) * *outer + log9 + ln(2L);
      how = "ell log 10 + log 9 + log 2";
    }
    out.push_back({log9 + logk * 3L + log9 + hd,
                   "h(9 f_k(alpha)/D) < log 9 + 3 log k + log 9 + " + how});
  }
  out.push_back({num("0.7") / static_cast<long>(order), "h(alpha) < 0.7/k"});
  out.push_back({ln(10L), "h(10) = log 10"});
  return out;
}

RealInterval matveev_bound(const MatveevInstance& inst) {
  if (inst.num_logs < 1 || inst.degree < 1) throw std::invalid_argument("matveev_bound: need num_logs >= 1 and degree >= 1");
  if (static_cast<int>(inst.heights.size()) != inst.num_logs) throw std::invalid_argument("matveev_bound: need one height per logarithm");
  const RealInterval logs = num(static_cast<long>(inst.num_logs));
  const RealInterval degree = num(static_cast<long>(inst.degree));
  RealInterval v = num("1.4") * powi(num(30L), static_cast<unsigned long>(inst.num_logs + 3)) * powi(logs, 4) *
                   realnum::sqrt(logs) * degree * degree * (ln(degree) + 1L) * (ln(inst.coeff_bound.with_digits(kDigits)) + 1L);
  for (const auto& a : inst.heights) v = v * a;
  return -v;
}

MatveevInstance matveev_first_form(int order, const RealInterval& index_bound) {
  RealInterval kk = num(static_cast<long>(order));
  return {3, order, index_bound, {kk * ln(kk) * 10L, num("0.7"), kk * ln(10L)}};
}

MatveevInstance matveev_second_form(int order, const RealInterval& index_bound) {
  RealInterval kk = num(static_cast<long>(order));
  RealInterval a1 = num("9.22e12") * powi(kk, 5) * powi(ln(kk), 2) * ln(index_bound.with_digits(kDigits));
  return {3, order, index_bound, {a1, num("0.7"), kk * ln(10L)}};
}

MatveevInstance matveev_pow2_form(const RealInterval& index_bound) {
  return {3, 1, index_bound, {ln(9L) * 2L, ln(2L), ln(10L)}};
}

MatveevInstance matveev_pow2_second_form(const RealInterval& index_bound) {
  return {3, 1, index_bound, {num("2.4e12") * ln(index_bound.with_digits(kDigits)), ln(2L), ln(10L)}};
}

NWindow n_window(long outer, long middle) {
  if (outer < 1 || middle < 1) throw std::invalid_argument("n_window: lengths must be >= 1");
  return {2 * outer + middle, 5 * (2 * outer + middle) + 2};
}

OuterLengthCap outer_length_cap(int order, const RealInterval& n_bound) {
  if (order < 2) throw std::invalid_argument("outer_length_cap: k must be >= 2");
  RealInterval index_bound = n_bound.with_digits(kDigits);
  if (!index_bound.certainly_above(BigRational(9)) && !index_bound.contains(BigRational(9))) {
    throw std::invalid_argument("outer_length_cap: n must be >= 9");
  }
  RealInterval kk = num(static_cast<long>(order));
  OuterLengthCap out{num("4e12") * powi(kk, 4) * powi(ln(kk), 2) * ln(index_bound), num(0L)};
  out.rederived = (ln(11L) - matveev_bound(matveev_first_form(order, index_bound))) / ln(10L);
  out.dominates = le(out.rederived, out.cap);
  return out;
}

RealInterval IndexCaps::m_cap(const RealInterval& log_n) const {
  return m_coefficient * log_n * log_n;
}

RealInterval index_cap_poly(int order) { return index_cap_poly_at(num(static_cast<long>(order))); }

IndexCaps index_caps(int order) {
  if (order < 2) throw std::invalid_argument("index_caps: k must be >= 2");
  RealInterval kk = num(static_cast<long>(order));
  RealInterval lk = ln(kk);
  IndexCaps out{order, num("3.5e24") * powi(kk, 8) * powi(lk, 3), index_cap_poly(order), num(0L)};
  RealInterval raw_c = num("2.2e25") * powi(kk, 8) * powi(lk, 3);
  double x = 10.0, c = raw_c.hi().to_double();
  for (int i = 0; i < 500; ++i) {
    double nx = c * std::log(x) * std::log(x);
    bool done = std::fabs(nx - x) <= 1e-12 * nx;
    x = nx;
    if (done) break;
  }
  out.fixed_point = RealInterval::exact(BigRational(x), kDigits);
  out.fixed_point_below_cap = le(out.fixed_point, out.n_cap);
  RealInterval ln_cap = ln(out.n_cap);
  out.cap_violates_raw = le(raw_c * ln_cap * ln_cap, out.n_cap);
  return out;
}

bool index_cap_below_half_power(int order) {
  RealInterval rhs = realnum::pow(num(2L), num(static_cast<long>(order)) / 2L);
  return le(index_cap_poly(order), rhs);
}

ResolvedCap resolve_log_power_cap(const RealInterval& c, int e) {
  if (e < 1) throw std::invalid_argument("resolve_log_power_cap: exponent must be >= 1");
  ResolvedCap out{c, e, num(0L), 0};
  const double cd = c.hi().to_double();
  double x = std::max(cd, 10.0);
  for (out.iterations = 1; out.iterations <= 1000; ++out.iterations) {
    double nx = cd * std::pow(std::log(x), e);
    bool done = std::fabs(nx - x) < 1e-6 * nx;
    x = nx;
    if (done) break;
  }
  out.fixed_point = RealInterval::exact(BigRational(x), kDigits);
  out.cap = ceil_hi(out.fixed_point * num("1.01"));
  auto rhs = [&](const RealInterval& v) { return c * powi(ln(v), static_cast<unsigned long>(e)); };
  RealInterval cap = num(out.cap);
  RealInterval half = cap / 2L;
  out.false_at_cap = le(rhs(cap), cap);
  out.true_at_half = le(half, rhs(half));
  // 1 - c e (log x)^{e-1} / x > 0
  RealInterval slope = c * static_cast<long>(e) * powi(ln(cap), static_cast<unsigned long>(e - 1)) / cap;
  out.increasing_at_cap = slope.certainly_below(BigRational(1));
  return out;
}

LargeOrderCaps large_order_caps() {
  const RealInterval ca = num("5.3e14"), cb = num("3.3e28");
  LargeOrderCaps out{ca, cb, resolve_log_power_cap(ca, 1), resolve_log_power_cap(cb, 2), 0, num(0L)};
  out.k_cap = out.branch_a.cap > out.branch_b.cap ? out.branch_a.cap : out.branch_b.cap;
  out.n_cap = index_cap_poly_at(num(out.k_cap));
  return out;
}

RealInterval log_n_log_k_bridge(int k_min) {
  if (k_min <= 900) throw std::domain_error("log_n_log_k_bridge: requires k_min > 900");
  RealInterval v = num(73L) / ln(static_cast<long>(k_min)) + 13L;
  if (!v.certainly_below(BigRational(117))) throw std::domain_error("log_n_log_k_bridge: coefficient not below 117");
  return v;
}

std::vector<ConstantCheck> constant_checks() {
  std::vector<ConstantCheck> out;
  auto add = [&](std::string name, RealInterval value, RealInterval limit) {
    bool ok = le(value, limit);
    out.push_back({std::move(name), std::move(value), std::move(limit), ok});
  };
  const RealInterval log2 = ln(2L), log9 = ln(9L), log10 = ln(10L), log11 = ln(11L), log27 = ln(27L);

  add("premise |Gamma1| < 11/10^2 for ell >= 2", num("0.11"), num("0.5"));
  add("premise |Gamma3| < 27/2^6 for min >= 6", num(27L) / 64L, num("0.5"));
  add("inflation -log(1 - x)/x on (0, 1/2]", log2 * 2L, num("1.5"));

  // Binet residual relative to 2^{n-2}: |eps| < 2^{1-k/2}, here k >= 12.
  RealInterval eps12 = num(1L) / 32L;
  add("Gamma3 constant with relative pow2 bound, k >= 12", num(2L) + num(12L) * (eps12 + 1L), num(27L));
  add("Gamma4 constant in branch ell log2 10 <= k/2", num(2L) + num("1.1"), num(8L));
  RealInterval eps394 = realnum::pow(num(2L), num(-196L));
  add("pow2 fallback constant for m, k >= 394", num(2L) + num("1.1") * (eps394 + 1L), num("3.2"));

  add("n cap 3e31 k^8 (log k)^5 below 2^{k/2} at k = 901", index_cap_poly(901), realnum::pow(num(2L), num("450.5")));

  // Smallest normalizing monomials at k = 2, n = 9.
  RealInterval l2 = log2, ln9 = ln(9L);
  RealInterval p41 = num(16L) * l2 * l2 * ln9;
  add("ell coefficient: (8.4e12 + log 11/P)/log 10", (num("8.4e12") + log11 / p41) / log10, num("4e12"));
  RealInterval p42 = num(256L) * l2 * l2 * l2 * ln9 * ln9;
  add("m coefficient: (7.9e24 + log 11/Q)/log 10", (num("7.9e24") + log11 / p42) / log10, num("3.5e24"));
  RealInterval ratio = num("8e12") / (num("3.5e24") * num(16L) * l2 * ln9);
  add("n coefficient: 5 * 3.5e24 (1 + 2.3e-12 + 2/5 / Q) + 2/Q", num("1.75e25") * (ratio + 1L) + num(3L) / p42, num("2.2e25"));
  add("k coefficient, branch k/2 small: 2(1.5e12 + log 27/log 9)/log 2", (num("1.5e12") + log27 / log9) * 2L / log2, num("4.4e12"));
  add("branch k/2 small with log n < 117 log k", num("4.4e12") * 117L, num("5.3e14"));
  add("ell coefficient, branch ell small: (1.5e12 + log 27/log 9)/log 10", (num("1.5e12") + log27 / log9) / log10, num("1e12"));
  add("A1 of the second pow2 form: (4 log 9 + 4 log 2)/log 9 + 1e12 log 10", (log9 * 4L + log2 * 4L) / log9 + num("1e12") * log10,
      num("2.4e12"));
  add("k coefficient, branch ell small: 2(8e23 + log 8/(log 9)^2)/log 2", (num("8e23") + ln(8L) / (log9 * log9)) * 2L / log2,
      num("2.4e24"));
  add("branch ell small with log n < 117 log k", num("2.4e24") * 117L * 117L, num("3.3e28"));

  OuterLengthCap ell_caps = outer_length_cap(2, num(9L));
  RealInterval chain = log9 * 3L + ln(2L) * 3L + ell_caps.cap * log10 + log2;
  add("h(gamma1) of the second form at the ell cap, k = 2, n = 9", chain, num("9.22e12") * p41);
  add("h(9 f_k(alpha)/d1) chain below 10 log k at k = 2", log9 * 2L + log2 * 3L, log2 * 10L);
  add("log n bridge at k = 901", log_n_log_k_bridge(901), num(117L));
  return out;
}

std::vector<MatveevAggregate> matveev_aggregates() {
  std::vector<MatveevAggregate> out;
  auto first = [](int order, const RealInterval& index_bound) {
    RealInterval kk = num(static_cast<long>(order)), lk = ln(kk);
    return -matveev_bound(matveev_first_form(order, index_bound)) / (powi(kk, 4) * lk * lk * ln(index_bound));
  };
  auto second = [](int order, const RealInterval& index_bound) {
    RealInterval kk = num(static_cast<long>(order)), lk = ln(kk), lnn = ln(index_bound);
    return -matveev_bound(matveev_second_form(order, index_bound)) / (powi(kk, 8) * powi(lk, 3) * lnn * lnn);
  };
  auto pow2 = [](int, const RealInterval& index_bound) { return -matveev_bound(matveev_pow2_form(index_bound)) / ln(index_bound); };
  auto pow2b = [](int, const RealInterval& index_bound) {
    RealInterval lnn = ln(index_bound);
    return -matveev_bound(matveev_pow2_second_form(index_bound)) / (lnn * lnn);
  };
  struct Row {
    const char* label;
    const char* published;
    RealInterval (*fn)(int, const RealInterval&);
  };
  const Row rows[] = {{"first form: 8.4e12 k^4 (log k)^2 log n", "8.4e12", +first},
                      {"first pow2 form: 1.5e12 log n", "1.5e12", +pow2},
                      {"second form: 7.9e24 k^8 (log k)^3 (log n)^2", "7.9e24", +second},
                      {"second pow2 form: 8e23 (log n)^2", "8e23", +pow2b}};
  const std::pair<int, const char*> probes[] = {{3, "9"}, {2, "20"}, {10, "1000"}, {900, "1.9e59"}};
  for (const auto& r : rows) {
    RealInterval v = r.fn(2, num(9L));
    RealInterval pub = num(r.published);
    bool worst = true;
    for (auto [order, index_bound] : probes) worst = worst && !v.certainly_below(r.fn(order, num(index_bound)));
    out.push_back({r.label, v, pub, le(v, pub * num("1.02")), worst});
  }
  return out;
}

}  // namespace kfibpal::baker
