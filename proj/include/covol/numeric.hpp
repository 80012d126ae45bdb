#pragma once

// MPFR-backed reals and outward-rounded intervals.  Decisions between
// transcendental quantities go through compare_certified(), which escalates
// the working precision and refuses to guess.

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <string>
#include <utility>

namespace covol {

using Integer = mpz_class;
using Rational = mpq_class;

mpfr_prec_t digits_to_bits(unsigned digits);

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 128);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Scientific notation with `digits` significant digits, e.g. "2.4197e-3".
  std::string to_string(unsigned digits) const;

 private:
  mpfr_t value_;
};

class Interval {
 public:
  explicit Interval(mpfr_prec_t bits);

  static Interval from_rational(const Rational& q, mpfr_prec_t bits);
  static Interval pi(mpfr_prec_t bits);
  /// Enclosure of sqrt(x) for x >= 0.
  static Interval sqrt_of(const Rational& x, mpfr_prec_t bits);
  /// Enclosure of base^exponent for base > 0.
  static Interval rational_power(const Rational& base, const Rational& exponent,
                                 mpfr_prec_t bits);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;
  Interval pow(long e) const;

  bool contains_zero() const;
  bool certainly_less(const Interval& o) const;
  Real midpoint() const;

 private:
  Real lo_, hi_;
};

/// Returns -1 if lhs < rhs, +1 if lhs > rhs.  `sides(bits)` must return
/// enclosures of both sides at the requested precision.  Tries 30, 60 and 120
/// decimal digits; throws Errc::UndecidedComparison if the enclosures still
/// overlap.
int compare_certified(const std::function<std::pair<Interval, Interval>(mpfr_prec_t)>& sides);

}  // namespace covol
