#include <doctest.h>
#include <cmath>

#include "problem_file.hpp"

using namespace kfibpal;
using namespace kfibpal::cli;

TEST_CASE("rationals") {
  CHECK(parse_rational("33/2") == BigRational(33, 2));
  CHECK(parse_rational("16.5") == BigRational(33, 2));
  CHECK(parse_rational("4/6") == BigRational(2, 3));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("symbolic logarithms") {
  auto near = [](const realnum::RealInterval& x, double v) { return std::abs(x.hi().to_double() - v) < 1e-14; };
  CHECK(near(eval_symbolic_log("log-10", 40), std::log(10.0)));
  CHECK(near(eval_symbolic_log("-log-rational 1/2", 40), std::log(2.0)));
  CHECK(near(eval_symbolic_log("log-alpha 2", 40), std::log((1 + std::sqrt(5.0)) / 2)));
  CHECK(near(eval_symbolic_log("log-expr 9f/d 5 4", 40), 1.57719051975291381600 - std::log(4.0)));
  CHECK(eval_symbolic_log("log-10", 80).digits() == 80);
  CHECK_THROWS_AS(eval_symbolic_log("log-pi", 40), std::invalid_argument);
  CHECK_THROWS_AS(eval_symbolic_log("log-rational -3", 40), std::invalid_argument);
  CHECK_THROWS_AS(eval_symbolic_log("log-10 7", 40), std::invalid_argument);
  CHECK_THROWS_AS(eval_symbolic_log("log-expr 9f/d 5", 40), std::invalid_argument);
}

TEST_CASE("problem files") {
  auto p = load_problem(R"({"etas": ["log-alpha 5", "-log-10", "log-expr 9f/d 5 4"],
                            "coeff_bounds": ["1e20", "1e20", 1], "scale": "1e70",
                            "c3": "33/2", "c4": "log-10", "digits": 100})");
  CHECK(p.etas.size() == 3);
  CHECK(p.coeff_bounds[0] == pow10(20));
  CHECK(p.scale == pow10(70));
  CHECK(p.c3 == BigRational(33, 2));
  CHECK(p.eta0.is_point());
  CHECK_THROWS_AS(load_problem(R"({"etas": ["log-10"], "coeff_bounds": [], "scale": 1, "c3": 1, "c4": "log-10"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_problem("not json"), std::invalid_argument);
}
