#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kfibpal/bignum.hpp"
#include "kfibpal/realnum.hpp"

namespace kfibpal::pipeline {

using realnum::RealInterval;

/// The four linear forms in logarithms.
///  outer:        (n-1) log alpha + (2l+m) log(1/10) + log(9 f / d1)
///  middle:       (n-1) log alpha + (l+m) log(1/10) + log(9 f / D)
///  pow2_outer:   log(d1/9) + (2l+m) log 10 + (n-2) log(1/2)
///  pow2_middle:  log(D/9) + (l+m) log 10 + (n-2) log(1/2)
/// with D = d1 10^l - (d1 - d2).
enum class Form { outer, middle, pow2_outer, pow2_middle };

std::string form_name(Form form);

struct LinearFormSpec {
  Form form = Form::outer;
  int order = 2;
  int d1 = 1;
  int d2 = 0;      // middle forms
  long outer = 0;  // middle forms, and every form in nonvanishing_check
};

/// d1 10^outer - (d1 - d2).
BigInt shifted_leading(int d1, int d2, long outer);

/// alpha, log alpha and log(9 f_k(alpha)) for one order at one precision.
struct RootLogs {
  int order = 0;
  int digits = 0;
  RealInterval alpha;
  RealInterval log_alpha;
  RealInterval log_9f;
};

/// Cached per (order, digits); safe to call from worker threads.
RootLogs root_logs(int order, int digits);

/// The three logarithms of the form in the coefficient order above.
std::vector<RealInterval> linear_form_etas(const LinearFormSpec& spec, int digits);

/// q = 2^twos 5^fives, if q has no other prime factors.
struct SmoothSplit {
  long twos = 0;
  long fives = 0;
};
std::optional<SmoothSplit> smooth_split(const BigRational& q);

/// The shape handed to the lattice step. A {2,5}-smooth leading constant of
/// a pow2 form folds into the other two coefficients, leaving the 2-D form
/// over (log 10, log 1/2) with bounds widened by |fives| and |twos - fives|.
/// A targeted pow2 form keeps its unit-coefficient logarithm out of the
/// basis: the lattice is the 2-D one over (log 10, -log 2), shared by all
/// pow2 forms at a given scale, and that logarithm becomes eta0.
struct LatticeForm {
  LinearFormSpec spec;
  bool folded = false;
  bool targeted = false;
  SmoothSplit split;
  std::vector<BigInt> coeff_bounds;

  int dim() const { return static_cast<int>(coeff_bounds.size()); }
  std::vector<RealInterval> etas(int digits) const;
  /// etas, then eta0 when targeted.
  std::vector<RealInterval> terms(int digits) const;
};

/// `bound` caps every coefficient other than the unit one. `targeted` only
/// applies to pow2 forms that do not fold.
LatticeForm lattice_form(const LinearFormSpec& spec, const BigInt& bound, bool targeted = false);

struct NonvanishingResult {
  bool certified = false;
  std::string method;
  int digits = 0;  // precision that separated the form from zero (interval method)
};

/// Certifies that the form does not vanish at (index, middle length). The
/// pow2 forms are decided exactly (5 divides one side and not the other);
/// the others by interval evaluation at increasing precision, up to
/// max_digits.
NonvanishingResult nonvanishing_check(const LinearFormSpec& spec, long index, long middle, int max_digits = 2000);

}  // namespace kfibpal::pipeline
