#include <doctest.h>

#include <random>

#include "kfibpal/lattice.hpp"
#include "lattice_oracle.hpp"

using namespace kfibpal;
using namespace kfibpal::lattice;

TEST_CASE("textbook reduction") {
  auto b = IntegerBasis::from_columns({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}});
  IntegerBasis r = lll_reduce(b);
  CHECK(is_reduced(r));
  CHECK(abs(determinant(r)) == abs(determinant(b)));
  CHECK(norm2(r.column(0)) <= 2);
  CHECK_FALSE(is_reduced(b));
}

TEST_CASE("singular bases are rejected") {
  auto b = IntegerBasis::from_columns({{1, 2}, {2, 4}});
  CHECK(determinant(b) == 0);
  CHECK_THROWS_AS(lll_reduce(b), SingularBasis);
  CHECK_THROWS_AS(gram_schmidt(b), SingularBasis);
}

TEST_CASE("property: LLL on random small bases") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const int dim = 2 + i % 2;
    auto b = testing::random_basis(rng, dim, dim == 2 ? 60 : 15);
    auto check = testing::check_lll(b, dim == 2 ? 30 : 12);
    CHECK(check.reduced);
    CHECK(check.unimodular);
    CHECK(check.consistent);
    CHECK(check.below_shortest);
  }
}

TEST_CASE("property: staged reduction keeps the lattice") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> small(-1000, 1000);
  for (int i = 0; i < 20; ++i) {
    const int dim = 2 + i % 2;
    // The approximation-lattice shape: identity over a huge last row.
    std::vector<Vector> cols;
    for (int j = 0; j < dim; ++j) {
      Vector c(static_cast<std::size_t>(dim), BigInt(0));
      if (j + 1 < dim) c[static_cast<std::size_t>(j)] = 1;
      BigInt big = pow10(300) * small(rng) + small(rng);
      mpz_class noise;
      mpz_ui_pow_ui(noise.get_mpz_t(), 7, 300 + static_cast<unsigned long>(i));
      c.back() = big + noise * (j + 1);
      cols.push_back(c);
    }
    auto b = IntegerBasis::from_columns(cols);
    if (determinant(b) == 0) continue;
    for (const Reduction& r : {lll_reduce_staged(b, 64), lll_reduce_fp(b)}) {
      CHECK(is_reduced(r.basis));
      BigInt det = determinant(r.transform);
      CHECK((det == 1 || det == -1));
      CHECK(testing::multiply(b, r.transform) == r.basis);
    }
  }
}

TEST_CASE("property: float-guided reduction on random bases") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const int dim = 2 + i % 3;
    auto b = testing::random_basis(rng, dim, 1000);
    Reduction fp = lll_reduce_fp(b);
    CHECK(is_reduced(fp.basis));
    BigInt det = determinant(fp.transform);
    CHECK((det == 1 || det == -1));
    CHECK(testing::multiply(b, fp.transform) == fp.basis);
  }
}

TEST_CASE("de Weger bound on a known form") {
  // log 2 and log 3 are independent: x1 log 2 + x2 log 3 stays away from 0.
  ReductionProblem p;
  const int digits = 80;
  p.etas = {realnum::log(realnum::RealInterval::exact(2L, digits)), -realnum::log(realnum::RealInterval::exact(3L, digits))};
  p.eta0 = realnum::RealInterval::exact(0L, digits);
  p.scale = pow10(30);
  p.coeff_bounds = {pow10(10), pow10(10)};
  p.c3 = 1;
  p.c4 = realnum::log(realnum::RealInterval::exact(2L, digits));
  CHECK(p.max_coeff_bound() == pow10(10));
  ReductionOutcome o = deweger_bound(p);
  CHECK(o.sum_sq == pow10(20));
  CHECK(o.allowance == 2 * pow10(10));
  CHECK(o.allowance_nearest == BigRational(2 * pow10(10) + 1, 2));
  REQUIRE(o.condition);
  CHECK(o.height_floor > 0);
  CHECK(o.height_floor < 200);
  // Equality or worse is a failure: a tiny scale cannot satisfy the condition.
  p.scale = pow10(12);
  CHECK_FALSE(deweger_bound(p).condition);
}

TEST_CASE("de Weger bound from a shared reduced basis") {
  // Same lattice, different targets: the reduced basis can be reused.
  ReductionProblem p;
  const int digits = 80;
  p.etas = {realnum::log(realnum::RealInterval::exact(10L, digits)), -realnum::log(realnum::RealInterval::exact(2L, digits))};
  p.scale = pow10(40);
  p.coeff_bounds = {pow10(12), pow10(12)};
  p.c3 = 12;
  p.c4 = realnum::log(realnum::RealInterval::exact(2L, digits));
  p.eta0 = realnum::log(realnum::RealInterval::exact(BigRational(7, 9), digits));
  IntegerBasis shared = lll_reduce(build_approx_lattice(p).basis);
  for (long num : {7L, 13L, 31L}) {
    p.eta0 = realnum::log(realnum::RealInterval::exact(BigRational(num, 9), digits));
    ReductionOutcome own = deweger_bound(p);
    ReductionOutcome reused = deweger_bound(p, shared);
    REQUIRE(own.condition);
    REQUIRE(reused.condition);
    CHECK(reused.allowance == 2 * pow10(12) + 1);
    CHECK(std::abs(reused.height_floor - own.height_floor) <= 4);
  }
  CHECK_THROWS_AS(deweger_bound(p, IntegerBasis::identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(deweger_bound(p, build_approx_lattice(p).basis), std::invalid_argument);
}

TEST_CASE("approximation lattice") {
  ReductionProblem p;
  p.etas = {realnum::RealInterval::exact(BigRational(1, 3), 40), realnum::RealInterval::exact(BigRational(1, 7), 40)};
  p.eta0 = realnum::RealInterval::exact(0L, 40);
  p.scale = 1000;
  p.coeff_bounds = {10, 10};
  ApproxLattice a = build_approx_lattice(p);
  CHECK(a.floors == std::vector<BigInt>{333, 142});
  CHECK(a.basis.column(0) == Vector{1, 333});
  CHECK(a.basis.column(1) == Vector{0, 142});
  p.etas[1] = realnum::RealInterval::exact(BigRational(1, 10000), 40);
  CHECK_THROWS_AS(build_approx_lattice(p), SingularBasis);
}
