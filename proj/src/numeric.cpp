#include "covol/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "covol/error.hpp"

namespace covol {

mpfr_prec_t digits_to_bits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept : Real(other) {}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(unsigned digits) const {
  if (mpfr_zero_p(value_)) return "0";
  std::vector<char> buf(digits + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(digits) - 1, value_);
  // Normalise the exponent ("e+05" -> "e5", "e-03" -> "e-3") for stable output.
  std::string s(buf.data());
  auto epos = s.find('e');
  if (epos == std::string::npos) return s;
  std::string mant = s.substr(0, epos);
  long ex = std::stol(s.substr(epos + 1));
  return mant + "e" + std::to_string(ex);
}

Interval::Interval(mpfr_prec_t bits) : lo_(bits), hi_(bits) {}

Interval Interval::from_rational(const Rational& q, mpfr_prec_t bits) {
  Interval r(bits);
  mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t bits) {
  Interval r(bits);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::sqrt_of(const Rational& x, mpfr_prec_t bits) {
  Interval r = from_rational(x, bits);
  mpfr_sqrt(r.lo_.get(), r.lo_.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi_.get(), r.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::rational_power(const Rational& base, const Rational& exponent,
                                  mpfr_prec_t bits) {
  if (sgn(base) <= 0) throw Error(Errc::DomainError, "rational_power needs a positive base");
  Interval b = from_rational(base, bits);
  Interval e = from_rational(exponent, bits);
  // x^y is monotone in each argument separately for x > 0, so the extremes
  // sit at the corners of the box.
  Real lo(bits), hi(bits), t(bits);
  bool first = true;
  for (auto* x : {&b.lo_, &b.hi_}) {
    for (auto* y : {&e.lo_, &e.hi_}) {
      mpfr_pow(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_pow(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  Interval r(bits);
  r.lo_ = lo;
  r.hi_ = hi;
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(std::min(precision(), o.precision()));
  mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(std::min(precision(), o.precision()));
  mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  mpfr_prec_t bits = std::min(precision(), o.precision());
  Interval r(bits);
  Real t(bits);
  bool first = true;
  for (auto* x : {&lo_, &hi_}) {
    for (auto* y : {&o.lo_, &o.hi_}) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero()) throw Error(Errc::DomainError, "interval division by an enclosure of zero");
  mpfr_prec_t bits = std::min(precision(), o.precision());
  Interval inv(bits);
  mpfr_ui_div(inv.lo_.get(), 1, o.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_.get(), 1, o.lo_.get(), MPFR_RNDU);
  return *this * inv;
}

Interval Interval::pow(long e) const {
  Interval acc = from_rational(Rational(1), precision());
  Interval base = *this;
  if (e < 0) {
    base = acc / base;
    e = -e;
  }
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Interval::certainly_less(const Interval& o) const {
  return mpfr_less_p(hi_.get(), o.lo_.get());
}

Real Interval::midpoint() const {
  Real m(precision() + 2);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

int compare_certified(const std::function<std::pair<Interval, Interval>(mpfr_prec_t)>& sides) {
  for (unsigned digits : {30u, 60u, 120u}) {
    auto [lhs, rhs] = sides(digits_to_bits(digits));
    if (lhs.certainly_less(rhs)) return -1;
    if (rhs.certainly_less(lhs)) return 1;
  }
  throw Error(Errc::UndecidedComparison, "enclosures still overlap at 120 digits");
}

}  // namespace covol
