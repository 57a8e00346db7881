#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace birat {

using Integer = mpz_class;

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& n) : value_(n) {}  // NOLINT
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  /// Accepts "p" or "p/q" with an optional leading sign.
  static Rational parse(const std::string& text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  /// Throws Error(DivisionByZero) on zero.
  Rational inverse() const;
  bool test_zero() const { return is_zero(); }
  Rational abs() const;

  double to_double() const { return value_.get_d(); }
  std::string str() const { return value_.get_str(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return a * b.inverse();
  }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.value_ = -a.value_;
    return r;
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class value_;
};

Rational pow(const Rational& base, unsigned exponent);

}  // namespace birat
