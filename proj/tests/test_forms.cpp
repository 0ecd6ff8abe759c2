#include <doctest.h>
#include <cmath>

#include "kfibpal/forms.hpp"

using namespace kfibpal;
using namespace kfibpal::pipeline;

TEST_CASE("shifted leading constant") {
  CHECK(shifted_leading(4, 6, 1) == 42);
  CHECK(shifted_leading(1, 0, 1) == 9);
  CHECK(shifted_leading(9, 0, 3) == 8991);
}

TEST_CASE("smooth split") {
  auto s = smooth_split(BigRational(8, 5));
  REQUIRE(s);
  CHECK(s->twos == 3);
  CHECK(s->fives == -1);
  CHECK(smooth_split(BigRational(9, 9)));
  CHECK_FALSE(smooth_split(BigRational(1, 9)));
  CHECK_FALSE(smooth_split(BigRational(3)));
}

TEST_CASE("etas") {
  // log(9 f_5(alpha)) from mpmath.
  RootLogs r = root_logs(5, 40);
  CHECK((r.log_9f - RealInterval::decimal("1.57719051975291381600395422576", 40)).magnitude().to_double() < 1e-28);
  auto e = linear_form_etas({Form::outer, 5, 4, 0, 0}, 40);
  REQUIRE(e.size() == 3);
  CHECK(e[0].is_positive());
  CHECK(e[1].is_negative());
  CHECK(std::abs(e[2].hi().to_double() - (1.57719051975291381600 - std::log(4.0))) < 1e-14);
}

TEST_CASE("lattice shapes") {
  const BigInt cap = pow10(20);
  LatticeForm a = lattice_form({Form::outer, 10, 3, 0, 0}, cap);
  CHECK(a.dim() == 3);
  CHECK(a.coeff_bounds == std::vector<BigInt>{cap, cap, 1});
  LatticeForm b = lattice_form({Form::pow2_outer, 10, 1, 0, 0}, cap);
  CHECK_FALSE(b.folded);
  CHECK(b.coeff_bounds == std::vector<BigInt>{1, cap, cap});
  // d1 = 9: log(9/9) = 0 folds away.
  LatticeForm c = lattice_form({Form::pow2_outer, 10, 9, 0, 0}, cap);
  CHECK(c.folded);
  CHECK(c.dim() == 2);
  // D = 72: D/9 = 2^3 folds; D = 73 does not.
  CHECK(lattice_form({Form::pow2_middle, 10, 8, 0, 1}, cap).folded);
  CHECK_FALSE(lattice_form({Form::pow2_middle, 10, 8, 1, 1}, cap).folded);
  LatticeForm d = lattice_form({Form::pow2_middle, 10, 1, 0, 1}, cap);  // D = 9
  CHECK(d.folded);
}

TEST_CASE("nonvanishing") {
  auto exact = nonvanishing_check({Form::pow2_outer, 5, 4, 6, 1}, 11, 1);
  CHECK(exact.certified);
  auto interval = nonvanishing_check({Form::outer, 5, 4, 6, 1}, 11, 1);
  CHECK(interval.certified);
  CHECK(interval.digits > 0);
}

TEST_CASE("shifted pow2 middle remainder") {
  // |log(D/9) - ell log 10 - log(d1/9)| <= 16 10^-ell for ell >= 2, the
  // remainder the shifted route charges against the pow2 outer reduction.
  for (long len = 2; len <= 6; ++len) {
    for (int d1 = 1; d1 <= 9; ++d1) {
      for (int d2 = 0; d2 <= 9; ++d2) {
        if (d2 == d1) continue;
        auto mid = linear_form_etas({Form::pow2_middle, 901, d1, d2, len}, 80);
        auto out = linear_form_etas({Form::pow2_outer, 901, d1, 0, 0}, 80);
        RealInterval rest = mid[0] - out[0] - mid[1] * len;
        BigRational cap = BigRational(16) / BigRational(pow10(static_cast<unsigned long>(len)));
        CHECK(rest.certainly_below(cap));
        CHECK(rest.certainly_above(-cap));
      }
    }
  }
}

TEST_CASE("targeted pow2 forms") {
  LatticeForm t = lattice_form({Form::pow2_middle, 901, 3, 7, 5}, BigInt(1000), true);
  CHECK(t.targeted);
  CHECK(t.dim() == 2);
  CHECK(t.coeff_bounds == std::vector<BigInt>{1000, 1000});
  auto terms = t.terms(60);
  auto full = linear_form_etas({Form::pow2_middle, 901, 3, 7, 5}, 60);
  REQUIRE(terms.size() == 3);
  CHECK((terms[2] - full[0]).magnitude().to_double() < 1e-50);
  CHECK((terms[0] - full[1]).magnitude().to_double() < 1e-50);
  // Smooth leading constants still fold; the outer forms ignore the flag.
  CHECK(lattice_form({Form::pow2_outer, 901, 9, 0, 0}, BigInt(1000), true).folded);
  CHECK_FALSE(lattice_form({Form::pow2_outer, 901, 9, 0, 0}, BigInt(1000), true).targeted);
  CHECK_FALSE(lattice_form({Form::outer, 50, 4, 0, 0}, BigInt(1000), true).targeted);
}
