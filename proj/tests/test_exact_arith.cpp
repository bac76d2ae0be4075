#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "lonely/exact_arith.hpp"

using lonely::BigInt;
using lonely::make_rational;
using lonely::norm_dist;
using lonely::Rational;

TEST_CASE("make_rational reduces and normalizes sign") {
  CHECK(make_rational(2, 4) == Rational(1, 2));
  CHECK(make_rational(-3, -6) == Rational(1, 2));
  CHECK(make_rational(3, -6).to_string() == "-1/2");

  const Rational zero = make_rational(0, 7);
  CHECK(zero.numerator() == 0);
  CHECK(zero.denominator() == 1);
  CHECK(zero.to_string() == "0");

  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("norm_dist examples") {
  CHECK(norm_dist(Rational(7, 3)) == Rational(1, 3));
  CHECK(norm_dist(Rational(1, 2)) == Rational(1, 2));
  CHECK(norm_dist(Rational(5, 1)) == Rational());
  CHECK(norm_dist(Rational(-1, 4)) == Rational(1, 4));
  CHECK(norm_dist(Rational(-7, 2)) == Rational(1, 2));
}

TEST_CASE("gcd_list and lcm_list") {
  std::vector<BigInt> a{4, 6, 10};
  std::vector<BigInt> b{1, 2, 3};
  std::vector<BigInt> c{9};
  CHECK(lonely::gcd_list(a) == 2);
  CHECK(lonely::gcd_list(b) == 1);
  CHECK(lonely::gcd_list(c) == 9);

  std::vector<BigInt> d{4};
  std::vector<BigInt> e{2, 3};
  std::vector<BigInt> f{6, 6};
  CHECK(lonely::lcm_list(d) == 4);
  CHECK(lonely::lcm_list(e) == 6);
  CHECK(lonely::lcm_list(f) == 6);

  std::vector<BigInt> empty;
  CHECK_THROWS_AS(lonely::gcd_list(empty), std::invalid_argument);
  CHECK_THROWS_AS(lonely::lcm_list(empty), std::invalid_argument);
  std::vector<BigInt> bad{3, 0};
  CHECK_THROWS_AS(lonely::gcd_list(bad), std::invalid_argument);
}

TEST_CASE("lcm_list does not overflow machine words") {
  std::vector<BigInt> primes{1000003, 1000033, 1000037, 1000039};
  const BigInt l = lonely::lcm_list(primes);
  CHECK(l == BigInt(1000003) * 1000033 * 1000037 * 1000039);
}

TEST_CASE("text round trip and decimals") {
  CHECK(lonely::parse_rational("3/19") == Rational(3, 19));
  CHECK(lonely::parse_rational("-4/8") == Rational(-1, 2));
  CHECK(lonely::parse_rational("5") == Rational(5, 1));
  CHECK_THROWS_AS(lonely::parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(lonely::parse_rational("a/3"), std::invalid_argument);
  CHECK_THROWS_AS(lonely::parse_rational("1/0"), std::invalid_argument);

  CHECK(lonely::to_decimal(Rational(1, 3), 5) == "0.33333");
  CHECK(lonely::to_decimal(Rational(2, 7), 6) == "0.285714");
  CHECK(lonely::to_decimal(Rational(1, 2), 0) == "0");
}

TEST_CASE("arithmetic and ordering") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK_THROWS_AS(Rational(1, 2) / Rational(), std::domain_error);
  CHECK(Rational(1, 5) < Rational(2, 9));
  CHECK(Rational(-7, 3).floor() == -3);
  CHECK(Rational(-7, 3).frac() == Rational(2, 3));
}

TEST_CASE("norm_dist and reduction invariants on random rationals") {
  std::mt19937_64 rng(20261017);
  std::uniform_int_distribution<long> num(-5000, 5000);
  std::uniform_int_distribution<long> den(1, 400);
  std::uniform_int_distribution<long> scale(-50, 50);
  const Rational half(1, 2);
  for (int iter = 0; iter < 2000; ++iter) {
    const Rational x(num(rng), den(rng));
    const Rational d = norm_dist(x);
    CHECK(d == norm_dist(-x));
    CHECK(d == norm_dist(x + Rational(1, 1)));
    CHECK(d >= Rational());
    CHECK(d <= half);
    CHECK((d == half) == (x - half).is_integer());

    long k = scale(rng);
    if (k == 0) k = 1;
    const long a = num(rng);
    const long b = den(rng);
    CHECK(make_rational(BigInt(a) * k, BigInt(b) * k) == make_rational(a, b));
  }
}
