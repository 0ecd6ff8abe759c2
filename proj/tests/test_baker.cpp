#include <doctest.h>
#include <cmath>

#include "kfibpal/baker.hpp"

using namespace kfibpal;
using namespace kfibpal::baker;

namespace {

double rel(const realnum::RealInterval& x, double ref) { return std::abs(x.hi().to_double() / ref - 1.0); }

}  // namespace

// 3e31 k^8 (log k)^5 evaluated with mpmath.
TEST_CASE("polynomial n cap") {
  CHECK(rel(index_cap_poly(2), 1.22882071877485e33) < 1e-12);
  CHECK(rel(index_cap_poly(900), 1.88092071266409e59) < 1e-12);
  CHECK(rel(index_cap_poly(901), 1.89925468439658e59) < 1e-12);
  CHECK(index_cap_below_half_power(900));
  CHECK_FALSE(index_cap_below_half_power(300));
}

TEST_CASE("index caps at the top order") {
  IndexCaps c = index_caps(900);
  CHECK(c.n_cap.hi().to_double() < 1.9e59);
  CHECK(c.fixed_point_below_cap);
  CHECK(c.cap_violates_raw);
  CHECK_THROWS_AS(index_caps(1), std::invalid_argument);
}

TEST_CASE("every constant relation holds") {
  for (const auto& chk : constant_checks()) {
    INFO(chk.name);
    CHECK(chk.ok);
  }
}

TEST_CASE("Matveev aggregates") {
  auto aggs = matveev_aggregates();
  CHECK(aggs.size() == 4);
  for (const auto& a : aggs) {
    INFO(a.label);
    CHECK(a.within_slack);
    CHECK(a.worst_case);
  }
}

TEST_CASE("Matveev bound formula") {
  // 1.4 * 30^6 * 3^4.5 * 1 * 1 * (1 + log 10) * 1 * 1 * 1
  MatveevInstance inst{3, 1, realnum::RealInterval::exact(10L, kDigits),
                       {realnum::RealInterval::exact(1L, kDigits), realnum::RealInterval::exact(1L, kDigits),
                        realnum::RealInterval::exact(1L, kDigits)}};
  double expected = -1.4 * std::pow(30.0, 6) * std::pow(3.0, 4.5) * (1 + std::log(10.0));
  CHECK(std::abs(matveev_bound(inst).lo().to_double() / expected - 1) < 1e-12);
  inst.heights.pop_back();
  CHECK_THROWS_AS(matveev_bound(inst), std::invalid_argument);
}

TEST_CASE("n window") {
  NWindow w = n_window(1, 1);
  CHECK(w.lo == 3);
  CHECK(w.hi == 17);
}

TEST_CASE("large order caps use natural logarithms") {
  LargeOrderCaps caps = large_order_caps();
  CHECK(caps.branch_a.ok());
  CHECK(caps.branch_b.ok());
  CHECK(std::abs(caps.k_cap.get_d() / 1.839e32 - 1) < 1e-3);
  CHECK(rel(caps.n_cap, 8.885e298) < 1e-3);
}

TEST_CASE("log n bridge") {
  CHECK(log_n_log_k_bridge(901).hi().to_double() < 117);
  CHECK_THROWS_AS(log_n_log_k_bridge(900), std::domain_error);
}

TEST_CASE("heights") {
  CHECK(std::abs(height_rational(9, 4).value.hi().to_double() - std::log(9.0)) < 1e-12);
  CHECK(std::abs(height_rational(-2, 6).value.hi().to_double() - std::log(3.0)) < 1e-12);
  CHECK_THROWS(height_rational(1, 0));
}
