#include <doctest.h>

#include "kfibpal/realnum.hpp"

using namespace kfibpal;
using namespace kfibpal::realnum;

namespace {

double distance(const RealInterval& x, const char* decimal) {
  return (x - RealInterval::decimal(decimal, x.digits())).magnitude().to_double();
}

}  // namespace

// Roots frozen from mpmath.findroot at 60 digits.
TEST_CASE("dominant roots") {
  struct Ref {
    int order;
    const char* value;
  };
  for (Ref r : {Ref{2, "1.61803398874989484820458683436563811772030918"},
                Ref{3, "1.83928675521416113255185256465328660042417875"},
                Ref{5, "1.96594823664548533718993737593440139615132718"},
                Ref{10, "1.99901863271010113866340923912915286185431008"}}) {
    DominantRoot root = alpha(r.order, 40);
    CHECK(root.psi_at_lo.is_negative());
    CHECK(root.psi_at_hi.is_positive());
    CHECK(root.enclosure.width().to_double() < 1e-40);
    CHECK(distance(root.enclosure, r.value) < 1e-40);
  }
  DominantRoot big = alpha(900, 300);
  CHECK(big.enclosure.certainly_below(BigRational(2)));
  CHECK(big.enclosure.certainly_above(2 - BigRational(1, 1) / BigRational(pow2(899))));
}

TEST_CASE("interval arithmetic encloses") {
  RealInterval third = RealInterval::exact(1L, 50) / 3L;
  CHECK(third.contains(BigRational(1, 3)));
  RealInterval two = sqrt(RealInterval::exact(2L, 50));
  CHECK((two * two).contains(BigRational(2)));
  RealInterval l10 = log(RealInterval::exact(10L, 50));
  CHECK(distance(l10, "2.30258509299404568401799145468436420760110148862877") < 1e-48);
  CHECK(exp(log(RealInterval::exact(7L, 50))).contains(BigRational(7)));
  CHECK_THROWS_AS(log(RealInterval::exact(0L, 20)), std::domain_error);
  CHECK_THROWS_AS(RealInterval::exact(1L, 20) / (third - third), std::domain_error);
  CHECK(bits_for_digits(100) >= 333);
}

TEST_CASE("binet residual stays below 1/2") {
  for (int order : {2, 3, 7, 10}) {
    for (long n : {2L, 5L, 40L, 120L}) {
      RealInterval r = binet_residual(order, n, 60);
      CHECK(r.certainly_below(BigRational(1, 2)));
      CHECK(r.certainly_above(BigRational(-1, 2)));
    }
  }
}

TEST_CASE("power-of-two residual in relative form") {
  CHECK(pow2_residual_check(40, 42));
  CHECK(pow2_residual_check(64, 1000));
  CHECK_THROWS_AS(pow2_residual_check(10, 100), std::invalid_argument);
}

TEST_CASE("scaled floors") {
  RealInterval l2 = log(RealInterval::exact(2L, 60));
  ScaledFloor f = floor_scaled(l2, pow10(20));
  CHECK(f.stable);
  CHECK(f.value == BigInt("69314718055994530941"));
  ScaledFloor g = floor_scaled(-l2, pow10(20));
  CHECK(g.value == BigInt("-69314718055994530942"));
  ScaledFloor wide = floor_scaled(l2.with_digits(10), pow10(40));
  CHECK_FALSE(wide.stable);
}
