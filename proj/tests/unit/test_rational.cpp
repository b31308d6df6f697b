#include "doctest.h"

#include <cmath>

#include "covercert/errors.hpp"
#include "covercert/lp.hpp"
#include "covercert/rational.hpp"

using namespace covercert;

TEST_CASE("parse and print canonical rationals") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-10/5")) == "-2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK(to_string(parse_rational("12")) == "12");
}

TEST_CASE("malformed rationals are rejected") {
  for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.5", "3/-4", "--1"}) {
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
}

TEST_CASE("canonical form after arithmetic") {
  const Rational a = parse_rational("2/6");
  const Rational b = parse_rational("1/6");
  const Rational c = a * b;
  CHECK(c.get_num() == 1);
  CHECK(c.get_den() == 18);
  CHECK(to_string(pow(parse_rational("-2/3"), 3)) == "-8/27");
  CHECK(factorial(8) == 40320);
}

TEST_CASE("log of huge rationals stays finite") {
  const Rational big = pow(Rational(10), 400);
  CHECK(log_rational(big) == doctest::Approx(400 * std::log(10.0)));
  CHECK(log_rational(1 / big) == doctest::Approx(-400 * std::log(10.0)));
}

TEST_CASE("determinant and rank") {
  QMatrix m = {{Rational(2), Rational(1)}, {Rational(4), Rational(3)}};
  CHECK(determinant(m) == 2);
  QMatrix sing = {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  CHECK(determinant(sing) == 0);
  CHECK(rank(sing) == 1);
  CHECK(independent_rows({{1, 0}, {2, 0}, {0, 1}}) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("make_primitive scales to coprime integers") {
  QVector v = {parse_rational("1/2"), parse_rational("-3/4"), Rational(0)};
  make_primitive(v);
  CHECK(v == QVector{2, -3, 0});
}

TEST_CASE("exact simplex: textbook problem") {
  // max 3x + 5y  s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36
  lp::Problem<Rational> p(2);
  p.objective = {3, 5};
  p.add({1, 0}, lp::Sense::kLessEq, 4);
  p.add({0, 2}, lp::Sense::kLessEq, 12);
  p.add({3, 2}, lp::Sense::kLessEq, 18);
  const auto s = lp::maximize(p);
  REQUIRE(s.status == lp::Status::kOptimal);
  CHECK(s.objective == 36);
  CHECK(s.x == QVector{2, 6});
}

TEST_CASE("simplex: equality, free variables, infeasible and unbounded") {
  lp::Problem<Rational> p(2);
  p.free = {true, true};
  p.objective = {-1, 0};
  p.add({1, 1}, lp::Sense::kEqual, -3);
  p.add({1, -1}, lp::Sense::kGreaterEq, -5);
  const auto s = lp::maximize(p);
  REQUIRE(s.status == lp::Status::kOptimal);
  CHECK(s.x == QVector{-4, 1});

  lp::Problem<Rational> bad(1);
  bad.add({1}, lp::Sense::kLessEq, -1);
  CHECK(lp::maximize(bad).status == lp::Status::kInfeasible);

  lp::Problem<double> unb(1);
  unb.objective = {1.0};
  unb.add({-1.0}, lp::Sense::kLessEq, 0.0);
  CHECK(lp::maximize(unb).status == lp::Status::kUnbounded);
}

TEST_CASE("simplex terminates on a degenerate cycling example") {
  // Beale's example cycles under the textbook largest-coefficient rule.
  lp::Problem<Rational> p(4);
  p.objective = {parse_rational("3/4"), -150, parse_rational("1/50"), -6};
  p.add({parse_rational("1/4"), -60, parse_rational("-1/25"), 9}, lp::Sense::kLessEq, 0);
  p.add({parse_rational("1/2"), -90, parse_rational("-1/50"), 3}, lp::Sense::kLessEq, 0);
  p.add({0, 0, 1, 0}, lp::Sense::kLessEq, 1);
  const auto s = lp::maximize(p);
  REQUIRE(s.status == lp::Status::kOptimal);
  CHECK(s.objective == parse_rational("1/20"));
}
