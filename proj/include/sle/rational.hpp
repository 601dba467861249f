#pragma once

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sle {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class; the wrapper exists so that
/// division by zero raises DomainError instead of trapping.
class Rational {
 public:
  Rational() = default;

  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      value_ = static_cast<long>(value);
    } else {
      value_ = static_cast<unsigned long>(value);
    }
  }

  explicit Rational(const mpz_class& integer);
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(const mpq_class& value);

  /// Parses base-10 numerator and denominator strings.
  static Rational from_strings(std::string_view numerator,
                               std::string_view denominator);

  const mpq_class& value() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational abs() const;
  Rational inverse() const;

  /// Nearest double (round toward zero per GMP); may overflow to +-inf.
  double to_double() const;

  /// log2 |x| without overflow; -inf for zero.
  double log2_abs() const;

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator-(const Rational& x);
  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x);

 private:
  mpq_class value_{0};
};

/// base^exponent; negative exponents invert (zero base then raises).
Rational pow(const Rational& base, long exponent);

/// n! exactly. Negative n raises DomainError.
Rational factorial(long n);

/// 1/n! for n >= 0 and exactly 0 for negative n (reciprocal Gamma at its poles).
Rational reciprocal_factorial(long n);

/// a!/b! for a >= b as the falling product a(a-1)...(b+1). Valid for any
/// integers with a >= b, matching the Gamma-ratio limit at poles.
Rational factorial_ratio(long a, long b);

}  // namespace sle
