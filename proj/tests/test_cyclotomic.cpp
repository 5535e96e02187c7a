#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "zc1/cyclotomic.hpp"
#include "zc1/numtheory.hpp"

using zc1::Cyclotomic;
using zc1::Rational;

namespace {
Cyclotomic zeta(long n, long k) { return Cyclotomic::root_of_unity(n, k); }
Cyclotomic alpha() { return -zeta(8, 1) + zeta(8, 3); }       // -sqrt 2
Cyclotomic beta() { return zeta(12, 7) - zeta(12, 11); }      // -sqrt 3
}  // namespace

TEST_CASE("roots of unity") {
  CHECK(zeta(1, 0) == Cyclotomic(Rational(1)));
  Cyclotomic i = zeta(4, 1);
  CHECK(i.conductor() == 4);
  CHECK(i * i == Cyclotomic(Rational(-1)));
  CHECK_THROWS_AS(Cyclotomic::root_of_unity(0, 1), zc1::error);
}

TEST_CASE("table irrationalities square to the right rationals") {
  Cyclotomic a = alpha();
  CHECK(a.conductor() == 8);
  CHECK((a * a).to_rational() == Rational(2));  // alpha = -sqrt 2
  Cyclotomic b = beta();
  CHECK((b * b).to_rational() == Rational(3));
  CHECK(!b.to_rational().has_value());
  // 1+i squares to 2i
  Cyclotomic one_plus_i = Cyclotomic(Rational(1)) + zeta(4, 1);
  CHECK(one_plus_i * one_plus_i == zeta(4, 1).scale(Rational(2)));
}

TEST_CASE("additive inverse cancels to the rational zero") {
  Cyclotomic x = zeta(8, 1).scale(Rational(2, 3)) + zeta(12, 5);
  Cyclotomic z = x + (-x);
  CHECK(z.is_zero());
  CHECK(z.conductor() == 1);
}

TEST_CASE("galois action") {
  CHECK(Cyclotomic(Rational(5)).galois(7) == Cyclotomic(Rational(5)));
  CHECK(zeta(8, 1).galois(3) == zeta(8, 3));
  CHECK(alpha().galois(3) == -alpha());
  CHECK_THROWS_AS(zeta(8, 1).galois(2), zc1::error);
}

TEST_CASE("traces") {
  // trace of the rational 1 in the ambient field of conductor 12
  CHECK(Cyclotomic(Rational(1)).trace_in_field(12) == Rational(4));
  // beta * zeta_12^-7 has trace 6 in Q(zeta_12)
  CHECK((beta() * zeta(12, -7)).trace_in_field(12) == Rational(6));
  CHECK(zeta(8, 1).trace_in_field(8) == Rational(0));
}

TEST_CASE("to_rational") {
  CHECK(Cyclotomic().to_rational() == Rational(0));
  CHECK(!beta().to_rational().has_value());
  CHECK((zeta(8, 1) * zeta(8, 7)).to_rational() == Rational(1));
}

TEST_CASE("conductor minimality") {
  for (long m : {1L, 2L, 3L, 4L, 6L, 8L, 9L, 12L, 16L, 18L, 20L, 24L}) {
    for (long j = 0; j < m; ++j) {
      long d = m / std::gcd(m, j == 0 ? m : j);
      long expect = d % 4 == 2 ? d / 2 : d;  // Q(zeta_{2u}) = Q(zeta_u), u odd
      CHECK(zeta(m, j).conductor() == expect);
    }
  }
}

TEST_CASE("canonical form: x + y - y is bit-identical to x") {
  std::mt19937 rng(20240817);
  const long conds[] = {1, 3, 4, 8, 12, 24};
  auto rand_elt = [&](int terms) {
    Cyclotomic acc;
    for (int t = 0; t < terms; ++t) {
      long n = conds[rng() % 6];
      long k = static_cast<long>(rng() % 24);
      long num = static_cast<long>(rng() % 7) - 3;
      long den = 1 + static_cast<long>(rng() % 4);
      acc = acc + Cyclotomic::root_of_unity(n, k).scale(Rational(num, den));
    }
    return acc;
  };
  for (int iter = 0; iter < 200; ++iter) {
    Cyclotomic x = rand_elt(3), y = rand_elt(2);
    Cyclotomic back = (x + y) - y;
    CHECK(back == x);
    CHECK(back.conductor() == x.conductor());
  }
}

TEST_CASE("trace linearity and galois invariance") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    long m = 24;
    Cyclotomic x = zeta(m, static_cast<long>(rng() % m)) +
                   zeta(m, static_cast<long>(rng() % m)).scale(Rational(2));
    Cyclotomic y = zeta(m, static_cast<long>(rng() % m));
    Rational a(static_cast<long>(rng() % 5) - 2), b(static_cast<long>(rng() % 5) - 2);
    Rational lhs = (x.scale(a) + y.scale(b)).trace_in_field(m);
    Rational rhs = a * x.trace_in_field(m) + b * y.trace_in_field(m);
    CHECK(lhs == rhs);
    long k = 1 + static_cast<long>(rng() % (m - 1));
    if (std::gcd(k, m) == 1) CHECK(x.galois(k).trace_in_field(m) == x.trace_in_field(m));
  }
}

TEST_CASE("trace oracle: brute-force galois sum, conductors up to 24") {
  for (long m = 1; m <= 24; ++m) {
    for (long j = 0; j < m; ++j) {
      Cyclotomic x = zeta(m, j);
      // independent loop: sum sigma_k(x) over k coprime to m
      Cyclotomic acc;
      for (long k = 1; k <= m; ++k)
        if (std::gcd(k, m) == 1) acc = acc + zeta(m, (j * k) % m);
      auto brute = acc.to_rational();
      REQUIRE(brute.has_value());
      CHECK(x.trace_in_field(m) == *brute);
    }
  }
}

TEST_CASE("trace scaling identity") {
  // trace_in_field(x, m) = phi(m)/phi(cond x) * trace_to_q(x), for all x
  std::mt19937 rng(99);
  const long conds[] = {1, 3, 4, 8, 12, 24};
  for (int iter = 0; iter < 50; ++iter) {
    Cyclotomic x = zeta(conds[rng() % 6], static_cast<long>(rng() % 24)) +
                   zeta(conds[rng() % 6], static_cast<long>(rng() % 24));
    for (long m : {4L, 8L, 12L, 24L}) {
      Rational expect = Rational(zc1::euler_phi(m), zc1::euler_phi(x.conductor())) * x.trace_to_q();
      CHECK(x.trace_in_field(m) == expect);
    }
  }
}

TEST_CASE("field membership") {
  CHECK(alpha().in_field(8));
  CHECK(!alpha().in_field(4));
  CHECK(!alpha().in_field(12));
  CHECK(beta().in_field(12));
  CHECK(beta().in_field(24));
  CHECK(Cyclotomic(Rational(7)).in_field(1));
}
