#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kfibpal/forms.hpp"
#include "kfibpal/lattice.hpp"

namespace kfibpal::pipeline {

struct InstanceKey {
  int order = 0;
  long outer = 0;
  int d1 = 0;
  int d2 = 0;

  friend auto operator<=>(const InstanceKey&, const InstanceKey&) = default;
};

std::string to_string(const InstanceKey& key);

struct SolverSettings {
  int base_digits = 240;
  int guard_digits = 50;
  int budget_decades = 12;  // total escalation of the scale, in powers of 10
  int refine_decades = 1;   // extra tries after the first success
  int hermite_margin = 0;   // extra decades on a jump taken from the Hermite bound
};

/// One reduction problem driven to a certified height bound (or not).
struct InstanceResult {
  InstanceKey key;
  Form form = Form::outer;
  bool folded = false;
  bool targeted = false;
  int dim = 0;
  BigInt start_scale;
  BigInt scale;      // scale of the kept outcome
  int decades = 0;   // escalation of `scale` over `start_scale`
  int attempts = 0;       // lattice reductions run
  int hermite_skips = 0;  // scales ruled out by the Hermite bound without reducing
  bool success = false;
  BigRational delta_squared;
  BigInt sum_sq;
  BigInt allowance;
  realnum::RealInterval height;
  long height_floor = 0;
  std::vector<BigInt> floors;  // bottom row of the kept lattice, then floor(C eta0) when targeted
  int digits = 0;              // working precision of the kept lattice
  std::string failure;
};

/// Reduces `form` starting at `start_scale` with c4 = log(c4_base). On a
/// failed condition the scale jumps by
///   max(1, ceil(dim/2 log10((allowance^2 + sum_sq) / delta^2)))
/// decades until the budget is spent; after the first success up to
/// refine_decades further decades are tried and the smallest height kept.
/// Every lattice is rebuilt guard_digits higher and must have the same
/// floors, otherwise the precision is raised. Scales where the Hermite
/// bound on the shortest vector already violates the condition are skipped
/// without reducing; the jump is then ceil(log10(need)/2) + hermite_margin decades.
InstanceResult solve_instance(const LatticeForm& form, const InstanceKey& key, const BigRational& c3, long c4_base,
                              const BigInt& start_scale, const SolverSettings& settings);

/// Recomputes floor(scale * eta_i) at `digits` and compares with `claimed`.
struct FloorAudit {
  bool match = false;
  std::vector<BigInt> recomputed;
};
FloorAudit audit_floors(const LatticeForm& form, const BigInt& scale, const std::vector<BigInt>& claimed, int digits);

/// c3 must be 1.5 times the constant of the |Gamma| bound it was derived from.
bool c3_consistent(const BigRational& c3, const BigRational& rhs);

/// Approximate log10 of a positive rational (no overflow for huge values).
double log10_approx(const BigRational& q);

}  // namespace kfibpal::pipeline
