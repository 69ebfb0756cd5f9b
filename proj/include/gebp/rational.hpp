#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace gebp {

// Arbitrary-precision rational, always kept canonical (gcd(|num|,den)=1,
// den>0).  All solver arithmetic goes through this type; doubles appear
// only in reports and CSV output.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(n) {}
  Rational(long long n);
  Rational(long long num, long long den);
  Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q);

  // Accepts "num/den", integers, and plain decimals ("1.25", "-.5").
  // Throws std::invalid_argument on anything else.
  static Rational parse(std::string_view text);

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_negative() const { return sgn(v_) < 0; }
  bool is_positive() const { return sgn(v_) > 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  mpz_class floor() const;
  mpz_class ceil() const;
  Rational abs() const;
  Rational reciprocal() const;

  double to_double() const { return v_.get_d(); }
  // Canonical "num/den" string ("5/1" for integers); the wire format.
  std::string str() const;
  // Human-friendly: omits "/1" for integers.
  std::string pretty() const;

  // Exact integer power; exp may be negative (base must be nonzero then).
  static Rational pow(const Rational& base, long exp);

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class v_;
};

// ⌊x/y⌋ and ⌈x/y⌉ as exact integers; y must be nonzero.
mpz_class floor_div(const Rational& x, const Rational& y);
mpz_class ceil_div(const Rational& x, const Rational& y);

// True when x is an integer multiple of grain (grain > 0).
bool is_multiple_of(const Rational& x, const Rational& grain);

Rational round_up_to_multiple(const Rational& x, const Rational& grain);
Rational round_down_to_multiple(const Rational& x, const Rational& grain);

// mpz value fitting in int64_t, or throws std::overflow_error.
std::int64_t to_int64(const mpz_class& z);

}  // namespace gebp
