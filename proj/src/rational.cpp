#include "sle/rational.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "sle/errors.hpp"

namespace sle {

Rational::Rational(const mpz_class& integer) : value_(integer) {}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) {
    throw DomainError("Rational: zero denominator");
  }
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) {
  value_.canonicalize();
}

Rational Rational::from_strings(std::string_view numerator,
                                std::string_view denominator) {
  mpz_class num;
  mpz_class den;
  if (num.set_str(std::string(numerator), 10) != 0 ||
      den.set_str(std::string(denominator), 10) != 0) {
    throw DomainError("Rational: malformed integer string");
  }
  return Rational(num, den);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) {
    throw DomainError("Rational: inverse of zero");
  }
  Rational out;
  mpq_inv(out.value_.get_mpq_t(), value_.get_mpq_t());
  return out;
}

double Rational::to_double() const {
  if (is_zero()) {
    return 0.0;
  }
  const double l2 = log2_abs();
  if (l2 > 1025.0) {
    return sign() * std::numeric_limits<double>::infinity();
  }
  if (l2 < -1080.0) {
    return sign() * 0.0;
  }
  return value_.get_d();
}

double Rational::log2_abs() const {
  if (is_zero()) {
    return -std::numeric_limits<double>::infinity();
  }
  long num_exp = 0;
  long den_exp = 0;
  const double num_mant = mpz_get_d_2exp(&num_exp, value_.get_num_mpz_t());
  const double den_mant = mpz_get_d_2exp(&den_exp, value_.get_den_mpz_t());
  return std::log2(std::fabs(num_mant)) + static_cast<double>(num_exp) -
         std::log2(den_mant) - static_cast<double>(den_exp);
}

std::string Rational::to_string() const { return value_.get_str(10); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) {
    throw DomainError("Rational: division by zero");
  }
  value_ /= rhs.value_;
  return *this;
}

Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& x) {
  return os << x.to_string();
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    return pow(base.inverse(), -exponent);
  }
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.value().get_num_mpz_t(),
             static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.value().get_den_mpz_t(),
             static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

Rational factorial(long n) {
  if (n < 0) {
    throw DomainError("factorial: negative argument " + std::to_string(n));
  }
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(out);
}

Rational reciprocal_factorial(long n) {
  if (n < 0) {
    return Rational(0);
  }
  return factorial(n).inverse();
}

Rational factorial_ratio(long a, long b) {
  if (a < b) {
    throw DomainError("factorial_ratio: requires a >= b");
  }
  mpz_class out = 1;
  for (long k = b + 1; k <= a; ++k) {
    out *= k;
  }
  return Rational(out);
}

}  // namespace sle
