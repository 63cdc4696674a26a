#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "qrt/number.hpp"

using qrt::num::Number;
using qrt::num::Tower;
using qrt::num::parse_number;
using qrt::num::sqrt_in_chain;
using qrt::num::sqrt_number;

namespace {
Number Q(long n, long d) { return Number(n) / Number(d); }
}  // namespace

TEST_CASE("rational arithmetic and canonical form") {
  Number a = Q(3, 10), b = Q(-1, 4);
  CHECK(a + b == Q(1, 20));
  CHECK(a * b == Q(-3, 40));
  CHECK(a - b == Q(11, 20));
  CHECK(a / b == Q(-6, 5));
  CHECK((Q(2, 4)).str() == "1/2");
  CHECK((Q(-2, 4)).str() == "-1/2");
  CHECK(Q(0, 7).is_zero());
  CHECK(Q(5, 5).is_one());
  CHECK(Q(-7, 3).sign() == -1);
  CHECK(Q(-7, 3).abs() == Q(7, 3));
  CHECK(Q(2, 3).pow(-2) == Q(9, 4));
  CHECK(Q(2, 3).inverse() == Q(3, 2));
  CHECK(Q(1, 3) < Q(1, 2));
  CHECK(Q(1, 2) >= Q(1, 2));
  CHECK_THROWS_AS(a / Number(0), std::domain_error);
  CHECK_THROWS_AS(Number(1).inverse() / Number(0), std::domain_error);
}

TEST_CASE("sqrt of a perfect rational square stays rational") {
  Tower t;
  Number r = sqrt_number(Q(9, 4), t);
  CHECK(r.is_rational());
  CHECK(r == Q(3, 2));
  CHECK(t.depth() == 0);
  CHECK(sqrt_number(Number(0), t).is_zero());
}

TEST_CASE("sqrt extends the tower and squares back exactly") {
  Tower t;
  Number s5 = sqrt_number(Number(5), t);
  CHECK(t.depth() == 1);
  CHECK(s5.depth() == 1);
  CHECK(s5 * s5 == Number(5));
  CHECK(s5.sign() == 1);

  // second sqrt of the same radicand reuses the chain
  Number again = sqrt_number(Number(5), t);
  CHECK(t.depth() == 1);
  CHECK(again == s5);

  // sqrt(20) = 2 sqrt(5) without a new level
  Number s20 = sqrt_number(Number(20), t);
  CHECK(t.depth() == 1);
  CHECK(s20 == Number(2) * s5);

  // nested extension: sqrt(sqrt(5) - 2)
  Number u = sqrt_number(s5 - Number(2), t);
  CHECK(t.depth() == 2);
  CHECK(u.depth() == 2);
  CHECK(u * u == s5 - Number(2));

  // arithmetic across depths
  Number v = (Q(1, 4) + Q(1, 2) * u);
  CHECK(v * Number(4) - Number(2) * u == Number(1));
  CHECK((v - Q(1, 4)) * (v - Q(1, 4)) == Q(1, 4) * (s5 - Number(2)));

  CHECK_THROWS_AS(sqrt_number(Number(-3), t), std::domain_error);
}

TEST_CASE("sqrt_in_chain finds representable roots and rejects others") {
  Tower t;
  Number s5 = sqrt_number(Number(5), t);
  auto lv = t.top();

  auto hit = sqrt_in_chain(Number(45), lv);
  REQUIRE(hit.has_value());
  CHECK(*hit == Number(3) * s5);

  // (1 + sqrt(5))^2 = 6 + 2 sqrt(5)
  auto nested = sqrt_in_chain(Number(6) + Number(2) * s5, lv);
  REQUIRE(nested.has_value());
  CHECK(*nested == Number(1) + s5);

  CHECK_FALSE(sqrt_in_chain(Number(2), lv).has_value());
  CHECK_FALSE(sqrt_in_chain(Number(3) + s5, lv).has_value());
}

TEST_CASE("tower depth cap") {
  Tower t;
  Number x = Number(2);
  // each sqrt of a fresh prime forces a new level
  x = sqrt_number(Number(2), t);
  x = sqrt_number(x + Number(1), t);
  x = sqrt_number(x + Number(1), t);
  x = sqrt_number(x + Number(1), t);
  CHECK(t.depth() == Tower::kMaxDepth);
  CHECK_THROWS_AS(sqrt_number(x + Number(1), t), std::runtime_error);
}

TEST_CASE("parse_number handles the documented grammar") {
  Tower t;
  CHECK(parse_number("3/10", t) == Q(3, 10));
  CHECK(parse_number("-1", t) == Number(-1));
  CHECK(parse_number(" 2 * sqrt( 3 ) + 1 ", t) ==
        Number(1) + Number(2) * sqrt_number(Number(3), t));

  Tower t2;
  Number v = parse_number("1/4-1/2*sqrt(sqrt(5)-2)", t2);
  Number s5 = sqrt_number(Number(5), t2);
  Number u = sqrt_number(s5 - Number(2), t2);
  CHECK(v == Q(1, 4) - Q(1, 2) * u);

  Tower t3;
  CHECK(parse_number("sqrt(13/4)", t3) * Number(2) ==
        sqrt_number(Number(13), t3));
}

TEST_CASE("parse round trip through str()") {
  Tower t;
  std::vector<std::string> inputs = {
      "0",
      "-7/3",
      "sqrt(5)",
      "1/4+1/2*sqrt(sqrt(5)-2)",
      "2-3*sqrt(7/2)",
  };
  for (const auto& s : inputs) {
    Number x = parse_number(s, t);
    Tower t2;
    Number y = parse_number(x.str(), t2);
    // compare by re-parsing into the first tower
    Number z = parse_number(y.str(), t);
    CHECK(z == x);
  }
}

TEST_CASE("parse_number error positions") {
  Tower t;
  CHECK_THROWS_AS(parse_number("", t), qrt::num::parse_error);
  CHECK_THROWS_AS(parse_number("sqrt(", t), qrt::num::parse_error);
  CHECK_THROWS_AS(parse_number("1/0", t), qrt::num::parse_error);
  CHECK_THROWS_AS(parse_number("x+1", t), qrt::num::parse_error);
  CHECK_THROWS_AS(parse_number("1 2", t), qrt::num::parse_error);
  CHECK_THROWS_AS(parse_number("sqrt(-1)", t), std::exception);
}

TEST_CASE("to_double approximates the exact value") {
  Tower t;
  Number s5 = sqrt_number(Number(5), t);
  CHECK(std::abs(s5.to_double() - 2.2360679774997896) < 1e-12);
  Number u = sqrt_number(s5 - Number(2), t);
  CHECK(std::abs(u.to_double() - std::sqrt(std::sqrt(5.0) - 2.0)) < 1e-12);
  CHECK(Q(-3, 8).to_double() == -0.375);
}

TEST_CASE("incompatible towers are rejected") {
  Tower ta, tb;
  Number a = sqrt_number(Number(5), ta);
  Number b = sqrt_number(Number(7), tb);
  CHECK_THROWS_AS((void)(a + b), qrt::num::incompatible_towers);
}
