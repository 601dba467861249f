#pragma once

#include <mpfr.h>

#include "sle/rational.hpp"

namespace sle {

/// RAII owner of an MPFR float with a fixed precision.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision);
  BigFloat(double value, mpfr_prec_t precision);
  BigFloat(const Rational& value, mpfr_prec_t precision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

/// Bits of working precision so that summing terms bounded by 2^log2_bound
/// leaves an absolute error below 2^-guard_bits.
mpfr_prec_t precision_for(double log2_bound, int guard_bits);

}  // namespace sle
