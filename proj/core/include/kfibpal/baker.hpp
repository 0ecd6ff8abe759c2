#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kfibpal/bignum.hpp"
#include "kfibpal/realnum.hpp"

namespace kfibpal::baker {

using realnum::RealInterval;

/// Working precision (decimal digits) of every closed-form evaluation here.
inline constexpr int kDigits = 40;

struct HeightValue {
  RealInterval value;
  std::string description;
};

/// h(p/q) = log max(|p|, q) after reduction. Throws on q == 0.
HeightValue height_rational(const BigInt& p, const BigInt& q);

/// Height inputs of the Matveev applications:
///  no ell:   h(9 f_k(alpha)/d1) via 2 log 9 + 3 log k, h(alpha) < 0.7/k,
///            h(10) = log 10;
///  with ell: h(9 f_k(alpha)/(d1 10^ell - (d1 - d2))) via
///            3 log 9 + 3 log k + ell log 10 + log 2 (or log D exactly when
///            the digits are known), then h(alpha), h(10).
std::vector<HeightValue> height_bounds_for_gammas(int order, std::optional<long> outer,
                                                  std::optional<std::pair<int, int>> digits);

struct MatveevInstance {
  int num_logs;
  int degree;
  RealInterval coeff_bound;
  std::vector<RealInterval> heights;
};

/// -1.4 30^{t+3} t^{4.5} D^2 (1 + log D)(1 + log B) A_1 ... A_t as an
/// enclosure; its lo end is the certified lower bound for log|Gamma|.
RealInterval matveev_bound(const MatveevInstance& inst);

/// The four Matveev applications with the A values used in the proof.
MatveevInstance matveev_first_form(int order, const RealInterval& index_bound);
MatveevInstance matveev_second_form(int order, const RealInterval& index_bound);
MatveevInstance matveev_pow2_form(const RealInterval& index_bound);
MatveevInstance matveev_pow2_second_form(const RealInterval& index_bound);

struct NWindow {
  long lo;  // n > lo
  long hi;  // n < hi
};

/// 2 ell + m < n < 5(2 ell + m) + 2.
NWindow n_window(long outer, long middle);

struct OuterLengthCap {
  RealInterval cap;        // 4e12 k^4 (log k)^2 log n
  RealInterval rederived;  // (log 11 + |matveev|) / log 10
  bool dominates = false;  // cap.lo >= rederived.hi
};

OuterLengthCap outer_length_cap(int order, const RealInterval& n_bound);

struct IndexCaps {
  int order;
  RealInterval m_coefficient;  // 3.5e24 k^8 (log k)^3, times (log n)^2
  RealInterval n_cap;          // 3e31 k^8 (log k)^5
  RealInterval fixed_point;    // of x -> 2.2e25 k^8 (log k)^3 (log x)^2
  bool fixed_point_below_cap = false;
  bool cap_violates_raw = false;  // n_cap >= 2.2e25 k^8 (log k)^3 (log n_cap)^2

  RealInterval m_cap(const RealInterval& log_n) const;
};

IndexCaps index_caps(int order);

/// 3e31 k^8 (log k)^5.
RealInterval index_cap_poly(int order);

/// 3e31 k^8 (log k)^5 < 2^{k/2}.
bool index_cap_below_half_power(int order);

struct ResolvedCap {
  RealInterval coefficient;
  int exponent;
  RealInterval fixed_point;
  BigInt cap;  // ceil(1.01 * fixed point)
  int iterations = 0;
  bool false_at_cap = false;     // cap >= c (log cap)^e: the inequality excludes it
  bool true_at_half = false;     // cap/2 < c (log(cap/2))^e: the cap is not loose
  bool increasing_at_cap = false;  // d/dx (x - c (log x)^e) > 0 at the cap
  bool ok() const { return false_at_cap && true_at_half && increasing_at_cap; }
};

/// Explicit cap K with x < c (log x)^e  =>  x < K, by monotone iteration
/// x -> c (log x)^e from max(c, 10) to relative change < 1e-6, then a 1%
/// margin.
ResolvedCap resolve_log_power_cap(const RealInterval& c, int e);

struct LargeOrderCaps {
  RealInterval branch_a_coefficient;  // k < c log k with c = 4.4e12 * 117 rounded up
  RealInterval branch_b_coefficient;  // k < c (log k)^2 with c = 2.4e24 * 117^2 rounded up
  ResolvedCap branch_a;
  ResolvedCap branch_b;
  BigInt k_cap;
  RealInterval n_cap;  // 3e31 k^8 (log k)^5 at k_cap
};

LargeOrderCaps large_order_caps();

/// 73 / log k_min + 13, the coefficient of log k in the log n bound for
/// k >= k_min. Throws std::domain_error unless k_min > 900 and the value is
/// below 117.
RealInterval log_n_log_k_bridge(int k_min);

struct ConstantCheck {
  std::string name;
  RealInterval value;
  RealInterval limit;
  bool ok;
};

/// The inequalities between intermediate constants that the bound chain
/// relies on (premise thresholds, inflation factor, re-derived Gamma
/// constants, coefficient roundings).
std::vector<ConstantCheck> constant_checks();

struct MatveevAggregate {
  std::string label;
  RealInterval computed;  // |matveev| divided by the displayed monomial
  RealInterval published;
  bool within_slack;      // computed <= 1.02 * published
  bool worst_case;        // normalized value at sampled larger points is smaller
};

/// Normalized Matveev aggregates at k = 2 (or D = 1), n = 9.
std::vector<MatveevAggregate> matveev_aggregates();

}  // namespace kfibpal::baker
