#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zc1/rational.hpp"

using zc1::Rational;

TEST_CASE("construction reduces and normalizes the sign") {
  Rational q(2, 4);
  CHECK(q.num() == 1);
  CHECK(q.den() == 2);
  Rational r(3, -6);
  CHECK(r.num() == -1);
  CHECK(r.den() == 2);
  CHECK_THROWS_AS(Rational(1, 0), zc1::error);
}

TEST_CASE("arithmetic") {
  Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK_THROWS_AS(a / Rational(0), zc1::error);
}

TEST_CASE("parse and str round-trip") {
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("-7/21") == Rational(-1, 3));
  CHECK(Rational(22, 7).str() == "22/7");
  CHECK(Rational(-4, 2).str() == "-2");
  CHECK_THROWS_AS(Rational::parse(""), zc1::error);
  CHECK_THROWS_AS(Rational::parse("x/y"), zc1::error);
}

TEST_CASE("floor and ceil") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(4).floor() == 4);
}

TEST_CASE("ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1) < Rational(0));
  CHECK(Rational(5, 5) == Rational(1));
}
