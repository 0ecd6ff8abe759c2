#pragma once

#include <string>

#include "kfibpal/lattice.hpp"

namespace kfibpal::cli {

/// Symbolic logarithm, optionally negated with a leading '-':
///   log-alpha K          log alpha(K)
///   log-10               log 10
///   log-rational P/Q     log(P/Q), P/Q positive (decimal literals allowed)
///   log-expr 9f/d K D    log(9 f_K(alpha) / D)
realnum::RealInterval eval_symbolic_log(const std::string& expr, int digits);

/// Exact rational from "P/Q" or a decimal literal such as "16.5" or "2.1e178".
BigRational parse_rational(const std::string& text);

/// A reduction problem read from JSON:
///   {"etas": [...], "eta0": "...", "coeff_bounds": [...], "scale": "2.1e178",
///    "c3": "33/2", "c4": "log-10", "digits": 240}
/// eta0 is optional (zero when absent); bounds and scale are exact integers.
lattice::ReductionProblem load_problem(const std::string& json_text);

}  // namespace kfibpal::cli
