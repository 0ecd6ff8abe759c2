#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kfibpal/bignum.hpp"
#include "kfibpal/campaign.hpp"
#include "kfibpal/forms.hpp"
#include "kfibpal/kfib.hpp"

namespace kfibpal::pipeline {

/// A reduction constant together with the |Gamma| bound constant it came
/// from; the pair must satisfy c3 = 3/2 rhs.
struct FormConstant {
  BigRational c3;
  BigRational rhs;
};

struct ProofConfig {
  int order_lo = 2;
  int order_hi = 900;
  bool full = false;  // every (k, ell) in the second stage of case I
  int stride = 10;    // otherwise every stride-th k and ell, endpoints kept

  int case1_digits = 240;
  int case2_digits = 950;
  int guard_digits = 50;
  int case1_budget = 12;
  int case2_budget = 40;
  int case1_refine = 1;
  int case2_refine = 2;

  long enumeration_floor = 2138;

  BigInt scale_stage1 = parse_decimal_integer("21" + std::string(177, '0'));
  BigInt scale_stage2 = pow10(179);
  BigInt scale_round1 = pow10(879);
  BigInt scale_round2 = pow10(195);

  FormConstant outer_const{BigRational(33, 2), 11};         // outer and middle forms
  FormConstant pow2_outer_const{BigRational(81, 2), 27};    // pow2 outer, min{k/2, ell log2 10}
  FormConstant pow2_middle_const{12, 8};                    // pow2 middle, k/2 (order > 900)
  FormConstant fallback_middle_const{BigRational(24, 5), BigRational(16, 5)};  // pow2 middle, min{k/2, m log2 10}
  // pow2 middle with log(D/9) split as ell log 10 + log(d1/9) + O(10^-ell):
  // either k/2 or ell is bounded by a pow2 outer reduction.
  FormConstant shift_order_const{24, 16};
  FormConstant shift_length_const{54, 36};

  /// Called from the orchestrating thread with short progress lines.
  std::function<void(const std::string&)> progress;

  /// Case II runs only when the order range reaches 900.
  bool covers_large_orders() const { return order_lo == 2 && order_hi == 900; }
};

/// What one instance contributes to its campaign's cap.
struct InstanceRecord {
  InstanceResult primary;
  std::optional<InstanceResult> fallback;
  long derived = 0;  // the ell, m or k bound implied by this instance
  bool ok = false;
  std::string via;   // "reduction", "fallback", or why neither applies
};

struct CampaignReport {
  std::string id;
  Form form = Form::outer;
  BigInt start_scale;
  FormConstant constant;
  bool c3_consistent = false;
  std::optional<FormConstant> fallback_constant;
  long c4_base = 10;
  BigInt coeff_cap;
  int digits = 0;
  int order_lo = 0;
  int order_hi = 0;
  long outer_lo = 0;
  long outer_hi = 0;

  long instances = 0;
  long escalated = 0;
  long reductions = 0;
  long hermite_skips = 0;
  long fallbacks = 0;
  long failures = 0;
  int max_decades = 0;
  std::map<int, long> decade_histogram;

  std::optional<InstanceRecord> worst;  // max derived, ties to the smallest key
  std::vector<InstanceKey> fallback_keys;
  std::vector<InstanceRecord> failed;   // the first few
  long bound = 0;                       // max derived bound
  std::optional<realnum::RealInterval> max_height;  // over successful primary reductions
  bool success = false;
};

struct SmallNReport {
  kfib::DivisibilityReport divisibility;
  kfib::Pow2Scan scan;
  kfib::Pow2Scan widened;
  bool success = false;
};

struct Case1Report {
  BigInt index_cap;  // coefficient cap for both stages
  CampaignReport stage1;
  CampaignReport stage2;
  std::map<std::pair<int, int>, long> outer_bounds;  // per (k, d1)
  long outer_max = 0;
  long middle_max = 0;
  long index_max = 0;  // 5(2 outer_max + middle_max) + 2
  long enumeration_limit = 0;
  std::vector<kfib::Solution> solutions;
  bool expected_solutions = false;
  bool none_at_index8 = false;
  bool success = false;
};

struct Case2Round {
  BigInt index_cap;
  CampaignReport outer;   // pow2 outer form
  CampaignReport shift_order;   // pow2 outer form at c4 = log 2
  CampaignReport shift_length;  // pow2 outer form at c4 = log 10
  std::map<int, long> shift_length_bounds;  // per d1: ell beyond this ...
  std::map<int, long> shift_order_bounds;   // ... gives k <= this
  long shifted = 0;                         // pow2 middle instances settled that way
  long order_bound_shift = 0;
  CampaignReport middle;  // pow2 middle form, branch ell small
  long order_bound_outer = 0;   // branch k/2 <= height
  long outer_bound = 0;         // branch ell log2 10 <= height
  long order_bound_middle = 0;
  long order_bound = 0;
  bool success = false;
};

struct Case2Report {
  bool skipped = true;
  BigInt order_cap;  // from the large-order caps
  Case2Round round1;
  Case2Round round2;
  bool success = false;
};

struct Discrepancy {
  std::string id;
  std::string note;
};

struct ProofCertificate {
  int schema = 1;
  std::string tool_version;
  ProofConfig config;
  SmallNReport small_n;
  Case2Report case2;
  Case1Report case1;
  std::vector<Discrepancy> discrepancies;
  std::string verdict;  // "proved", "proved-restricted" or "inconclusive"
  std::vector<std::string> failures;
};

SmallNReport run_case_small_n();
Case1Report run_case1(const ProofConfig& config);
Case2Report run_case2(const ProofConfig& config);
ProofCertificate run_full_proof(const ProofConfig& config);

/// Runs one campaign over `keys`: reduce each instance with `primary`, and
/// when that fails and `fallback` is set, with the fallback; `derive` maps
/// the results to the instance's bound.
struct CampaignPlan {
  std::string id;
  Form form = Form::outer;
  FormConstant constant;
  long c4_base = 10;
  bool targeted = false;  // pow2 forms: unit-coefficient log as the lattice target
  BigInt start_scale;
  BigInt coeff_cap;
  SolverSettings settings;
  std::vector<InstanceKey> keys;
  std::optional<FormConstant> fallback_constant;
  std::function<std::optional<InstanceResult>(const InstanceKey&)> fallback;  // optional
  std::function<InstanceRecord(InstanceResult primary, std::optional<InstanceResult> fallback)> derive;
};

/// `records`, when given, receives every instance record in key order.
CampaignReport run_campaign(const CampaignPlan& plan, std::vector<InstanceRecord>* records = nullptr);

/// The first case I stage: the outer form over `keys` (ell unused), with the
/// pow2 outer fallback for degenerate instances; derived bounds are on ell.
CampaignPlan outer_length_plan(const ProofConfig& config, const BigInt& cap, std::vector<InstanceKey> keys);

/// Deterministic worst instance: larger derived bound first, then the
/// lexicographically smallest key.
bool worse_than(const InstanceRecord& a, const InstanceRecord& b);

/// The case I and II notes that are always attached to a certificate.
std::vector<Discrepancy> standard_discrepancies(const ProofCertificate& cert);

}  // namespace kfibpal::pipeline
