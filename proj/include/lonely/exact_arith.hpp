#pragma once

// Exact rational arithmetic and the distance-to-nearest-integer function.
//
// Every quantity in the library (times, positions on the track, loneliness
// values) is a Rational. Values are kept in canonical reduced form at all
// times, so equality is componentwise and ordering never needs rounding.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lonely {

using BigInt = mpz_class;

class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  // Throws std::invalid_argument when den == 0.
  Rational(BigInt num, BigInt den);

  static Rational integer(const BigInt& value) { return Rational(value, 1); }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_integer() const { return den_ == 1; }

  // Largest integer k with k <= *this.
  BigInt floor() const;
  // *this - floor(), in [0, 1).
  Rational frac() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  // "p/q", or "p" when q == 1.
  std::string to_string() const;

 private:
  void normalize();

  BigInt num_;
  BigInt den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational make_rational(const BigInt& num, const BigInt& den);

// Parses "p/q" or "p" (optional leading '-'). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Decimal expansion truncated toward zero to `digits` fractional digits.
std::string to_decimal(const Rational& x, int digits);

// min over integers k of |x - k|; always in [0, 1/2].
Rational norm_dist(const Rational& x);

// Both throw std::invalid_argument on an empty list or a non-positive entry.
BigInt gcd_list(std::span<const BigInt> xs);
BigInt lcm_list(std::span<const BigInt> xs);

}  // namespace lonely
