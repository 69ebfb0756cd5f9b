#include "gebp/rational.hpp"

#include <cctype>
#include <climits>
#include <ostream>
#include <stdexcept>

namespace gebp {

namespace {

mpz_class mpz_from_ll(long long n) {
  // mpz_class has no long long constructor on LP64-agnostic paths; go via string
  // only when the value does not fit in a long.
  if (n >= static_cast<long long>(LONG_MIN) && n <= static_cast<long long>(LONG_MAX)) {
    return mpz_class(static_cast<long>(n));
  }
  return mpz_class(std::to_string(n));
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long long n) : v_(mpz_from_ll(n)) {}

Rational::Rational(long long num, long long den) : Rational(mpz_from_ll(num), mpz_from_ll(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) {
  if (v_.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) throw std::invalid_argument("bad rational literal: " + s);

  auto slash = body.find('/');
  auto dot = body.find('.');
  Rational value;
  if (slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("bad rational literal: " + s);
    }
    value = Rational(mpz_class(std::string(num)), mpz_class(std::string(den)));
  } else if (dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("bad rational literal: " + s);
    }
    mpz_class whole_z = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
    mpz_class frac_z = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac));
    mpz_class scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    value = Rational(whole_z * scale + frac_z, scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("bad rational literal: " + s);
    value = Rational(mpz_class(std::string(body)));
  }
  return negative ? -value : value;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational division by zero");
  v_ /= o.v_;
  return *this;
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

mpz_class Rational::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

Rational Rational::abs() const { return is_negative() ? -*this : *this; }

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::invalid_argument("reciprocal of zero");
  return Rational(den(), num());
}

std::string Rational::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::string Rational::pretty() const {
  if (is_integer()) return v_.get_num().get_str();
  return str();
}

Rational Rational::pow(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  bool invert = exp < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-(exp + 1)) + 1UL
                           : static_cast<unsigned long>(exp);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.v_.get_num_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), base.v_.get_den_mpz_t(), k);
  Rational r(n, d);
  return invert ? r.reciprocal() : r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.pretty(); }

mpz_class floor_div(const Rational& x, const Rational& y) { return (x / y).floor(); }

mpz_class ceil_div(const Rational& x, const Rational& y) { return (x / y).ceil(); }

bool is_multiple_of(const Rational& x, const Rational& grain) {
  if (!grain.is_positive()) throw std::invalid_argument("grain must be positive");
  return (x / grain).is_integer();
}

Rational round_up_to_multiple(const Rational& x, const Rational& grain) {
  return Rational(ceil_div(x, grain)) * grain;
}

Rational round_down_to_multiple(const Rational& x, const Rational& grain) {
  return Rational(floor_div(x, grain)) * grain;
}

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer out of int64 range: " + z.get_str());
  return static_cast<std::int64_t>(z.get_si());
}

}  // namespace gebp
