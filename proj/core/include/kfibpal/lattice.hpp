#pragma once

#include <string>
#include <vector>

#include "kfibpal/bignum.hpp"
#include "kfibpal/realnum.hpp"

namespace kfibpal::lattice {

using realnum::RealInterval;
using Vector = std::vector<BigInt>;
using RationalVector = std::vector<BigRational>;

/// Square integer matrix stored by columns; the columns are the basis.
struct IntegerBasis {
  std::vector<Vector> columns;

  int dim() const { return static_cast<int>(columns.size()); }
  const Vector& column(int j) const { return columns[static_cast<std::size_t>(j)]; }

  static IntegerBasis identity(int dim);
  /// Columns given as a list; all must have length == count.
  static IntegerBasis from_columns(std::vector<Vector> cols);

  friend bool operator==(const IntegerBasis&, const IntegerBasis&) = default;
};

std::string to_string(const IntegerBasis& b);

class SingularBasis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

BigInt dot(const Vector& a, const Vector& b);
BigInt norm2(const Vector& a);
/// Exact determinant (fraction-free elimination).
BigInt determinant(const IntegerBasis& b);

struct GSOData {
  std::vector<RationalVector> bstar;
  std::vector<BigRational> bstar_norm2;
  /// mu[i][j] for j < i; zero elsewhere.
  std::vector<RationalVector> mu;
};

/// Throws SingularBasis if some b_i* vanishes.
GSOData gram_schmidt(const IntegerBasis& b);

/// Size condition |mu_ij| <= 1/2 and Lovasz condition with 3/4, exactly.
bool is_reduced(const IntegerBasis& b);

struct Reduction {
  IntegerBasis basis;
  /// Integer matrix U (by columns) with reduced = original * U.
  IntegerBasis transform;
  long swaps = 0;
};

/// Integral LLL with Lovasz constant 3/4; all quantities stay integers.
/// Throws SingularBasis on dependent columns.
IntegerBasis lll_reduce(const IntegerBasis& b);
Reduction lll_reduce_with_transform(const IntegerBasis& b);

/// Same lattice, reduced in stages for bases whose last row dominates:
/// the last row is truncated by a shrinking number of bits, each truncated
/// basis is reduced and its transform applied, and a final exact pass runs
/// on the untruncated basis. The output is reduced but need not equal
/// lll_reduce(b).
Reduction lll_reduce_staged(const IntegerBasis& b, int stage_bits = 160);

/// Same lattice, reduced with the Gram-Schmidt data kept in long double
/// (exact basis, Gram matrix and transform; lazy size reduction), then
/// passed through the exact integral LLL, so the output is exactly reduced.
/// Meant for small dimensions with huge entries.
Reduction lll_reduce_fp(const IntegerBasis& b);

struct MinBound {
  BigRational c1_squared;     // max_j |b_1|^2 / |b_j*|^2
  BigRational lambda;
  BigRational delta_squared;  // lambda^2 |b_1|^2 / c1^2
  RealInterval delta;         // enclosure of sqrt(delta_squared)
  bool y_in_lattice = true;
};

/// Lower bound on l(L, y) for a reduced basis: l(L, y) >= delta.
MinBound lattice_min_lower_bound(const IntegerBasis& reduced, const Vector& y);

/// One instance of |eta0 + x_1 eta_1 + ... + x_k eta_k| <= c3 exp(-c4 H),
/// |x_i| <= X_i.
struct ReductionProblem {
  std::vector<RealInterval> etas;
  RealInterval eta0;
  BigInt scale;
  std::vector<BigInt> coeff_bounds;
  BigRational c3;
  RealInterval c4;

  BigInt max_coeff_bound() const;
};

struct ApproxLattice {
  IntegerBasis basis;
  Vector target;
  std::vector<BigInt> floors;  // floor(C eta_1) .. floor(C eta_k)
  BigInt floor0;               // floor(C eta_0)
};

/// Identity block over the bottom row of floors. Throws
/// realnum::PrecisionError on an unstable floor and SingularBasis when the
/// last floor is zero.
ApproxLattice build_approx_lattice(const ReductionProblem& p);

struct ReductionOutcome {
  IntegerBasis reduced;
  MinBound bound;
  BigInt sum_sq;                   // sum_{i<k} X_i^2
  BigInt allowance;                // sum X_i + [eta0 != 0], for floored entries
  BigRational allowance_nearest;   // (1 + sum X_i) / 2, for rounded entries
  bool condition = false;          // delta^2 > allowance^2 + sum_sq
  RealInterval height;             // (log(C c3) - log(sqrt(delta^2 - sum_sq) - allowance)) / c4
  long height_floor = 0;           // floor of height.hi
  BigRational degenerate_xk;       // -floor(C eta0) / floor(C eta_k)
};

ReductionOutcome deweger_bound(const ReductionProblem& p);

/// Same, with `reduced` an LLL-reduced basis of build_approx_lattice(p).basis
/// computed elsewhere (many problems share the lattice and differ only in
/// eta0). Throws std::invalid_argument unless `reduced` is reduced and spans
/// that lattice.
ReductionOutcome deweger_bound(const ReductionProblem& p, const IntegerBasis& reduced);


}  // namespace kfibpal::lattice
