#include "lonely/exact_arith.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace lonely {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  return q;
}

Rational Rational::frac() const {
  Rational r;
  mpz_fdiv_r(r.num_.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  r.den_ = den_;
  r.normalize();
  return r;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  BigInt n = num_ * o.den_ + o.num_ * den_;
  num_ = std::move(n);
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  BigInt n = num_ * o.den_ - o.num_ * den_;
  num_ = std::move(n);
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  BigInt n = num_ * o.den_;
  BigInt d = den_ * o.num_;
  num_ = std::move(n);
  den_ = std::move(d);
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) {
    int c = cmp(a.num_, b.num_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational make_rational(const BigInt& num, const BigInt& den) { return Rational(num, den); }

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  std::size_t start = (!digits.empty() && digits.front() == '-') ? 1 : 0;
  if (digits.size() == start) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t i = start; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(digits), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text), 1);
  return Rational(parse_integer(text.substr(0, slash), text), parse_integer(text.substr(slash + 1), text));
}

std::string to_decimal(const Rational& x, int digits) {
  BigInt num = abs(x.numerator());
  const BigInt& den = x.denominator();
  BigInt whole = num / den;
  BigInt rem = num % den;
  std::string out = (x.numerator() < 0 ? "-" : "") + whole.get_str();
  if (digits <= 0) return out;
  out += '.';
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    BigInt d = rem / den;
    rem %= den;
    out += static_cast<char>('0' + d.get_si());
  }
  return out;
}

Rational norm_dist(const Rational& x) {
  Rational f = x.frac();
  Rational g = Rational(1, 1) - f;
  return g < f ? g : f;
}

BigInt gcd_list(std::span<const BigInt> xs) {
  if (xs.empty()) throw std::invalid_argument("gcd of an empty list");
  BigInt g = 0;
  for (const auto& x : xs) {
    if (x <= 0) throw std::invalid_argument("gcd_list expects positive integers");
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  return g;
}

BigInt lcm_list(std::span<const BigInt> xs) {
  if (xs.empty()) throw std::invalid_argument("lcm of an empty list");
  BigInt l = 1;
  for (const auto& x : xs) {
    if (x <= 0) throw std::invalid_argument("lcm_list expects positive integers");
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_mpz_t());
  }
  return l;
}

}  // namespace lonely
