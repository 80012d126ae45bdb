#include "covol/exact_arith.hpp"

#include <mutex>
#include <sstream>
#include <vector>

#include "covol/error.hpp"

namespace covol::arith {

namespace {

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(Errc::DomainError, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rational rpow(const Rational& b, long e) {
  Rational r(ipow(b.get_num(), e < 0 ? -e : e), ipow(b.get_den(), e < 0 ? -e : e));
  r.canonicalize();
  if (e < 0) {
    if (sgn(r) == 0) throw Error(Errc::DomainError, "zero to a negative power");
    r = 1 / r;
  }
  return r;
}

Rational bernoulli_number(unsigned k) {
  // Memoised recurrence sum_{j=0}^{m} C(m+1,j) B_j = 0.
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= k) {
    unsigned m = static_cast<unsigned>(table.size());
    Rational s = 0;
    for (unsigned j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * table[j];
    Rational b = -s / Rational(m + 1);
    b.canonicalize();
    table.push_back(b);
  }
  return table[k];
}

Rational bernoulli_polynomial(unsigned k, const Rational& x) {
  Rational s = 0;
  Rational xp = 1;  // x^{k-j}, built from j = k downwards
  for (unsigned j = k + 1; j-- > 0;) {
    s += Rational(binomial(k, j)) * bernoulli_number(j) * xp;
    xp *= x;
  }
  return s;
}

int kronecker(const Integer& a, const Integer& n) {
  if (n <= 0) throw Error(Errc::DomainError, "kronecker symbol needs n >= 1");
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int chi(long D, const Integer& a) {
  if (a <= 0) throw Error(Errc::DomainError, "chi is evaluated at positive integers");
  return kronecker(Integer(-D), a);
}

bool is_valid_discriminant(long D) {
  if (D <= 0 || D % 4 != 3) return false;
  for (long p = 2; p * p <= D; ++p)
    if (D % (p * p) == 0) return false;
  return true;
}

Rational generalized_bernoulli(long D, unsigned k) {
  if (!is_valid_discriminant(D)) throw Error(Errc::DomainError, "invalid discriminant " + std::to_string(D));
  if (k == 0) throw Error(Errc::DomainError, "generalized Bernoulli needs k >= 1");
  Rational s = 0;
  for (long a = 1; a <= D; ++a) {
    int c = chi(D, Integer(a));
    if (c == 0) continue;
    Rational x(a, D);
    x.canonicalize();
    s += c * bernoulli_polynomial(k, x);
  }
  return s * Rational(ipow(Integer(D), k - 1));
}

Rational AlgebraicValue::to_rational() const {
  if (!is_rational())
    throw Error(Errc::RationalityViolation, "value " + to_string() + " is not rational");
  return coeff * rpow(Rational(D), sqrtD_exp / 2);
}

namespace {

long merge_D(const AlgebraicValue& a, const AlgebraicValue& b) {
  if (a.sqrtD_exp == 0) return b.D;
  if (b.sqrtD_exp == 0) return a.D;
  if (a.D != b.D) throw Error(Errc::DomainError, "mixing values over different discriminants");
  return a.D;
}

}  // namespace

AlgebraicValue AlgebraicValue::operator*(const AlgebraicValue& o) const {
  AlgebraicValue r{coeff * o.coeff, pi_exp + o.pi_exp, sqrtD_exp + o.sqrtD_exp, merge_D(*this, o)};
  return r;
}

AlgebraicValue AlgebraicValue::operator/(const AlgebraicValue& o) const {
  if (sgn(o.coeff) == 0) throw Error(Errc::DomainError, "division by zero");
  AlgebraicValue r{coeff / o.coeff, pi_exp - o.pi_exp, sqrtD_exp - o.sqrtD_exp, merge_D(*this, o)};
  return r;
}

AlgebraicValue AlgebraicValue::pow(long e) const {
  return {rpow(coeff, e), pi_exp * e, sqrtD_exp * e, D};
}

bool AlgebraicValue::operator==(const AlgebraicValue& o) const {
  if (is_rational() && o.is_rational()) return to_rational() == o.to_rational();
  return coeff == o.coeff && pi_exp == o.pi_exp && sqrtD_exp == o.sqrtD_exp && D == o.D;
}

Interval AlgebraicValue::enclose(mpfr_prec_t bits) const {
  Interval r = Interval::from_rational(coeff, bits);
  if (pi_exp != 0) r = r * Interval::pi(bits).pow(pi_exp);
  if (sqrtD_exp != 0) {
    // Split D^{e/2} into an exact rational part and at most one square root.
    long half = sqrtD_exp >= 0 ? sqrtD_exp / 2 : -((-sqrtD_exp + 1) / 2);
    long rest = sqrtD_exp - 2 * half;  // 0 or 1
    r = r * Interval::from_rational(rpow(Rational(D), half), bits);
    if (rest) r = r * Interval::sqrt_of(Rational(D), bits);
  }
  return r;
}

std::string AlgebraicValue::to_string() const {
  std::ostringstream os;
  os << coeff.get_str();
  if (pi_exp) os << "*pi^" << pi_exp;
  if (sqrtD_exp) os << "*" << D << "^(" << sqrtD_exp << "/2)";
  return os.str();
}

AlgebraicValue zeta_even(unsigned k) {
  if (k < 2 || k % 2) throw Error(Errc::DomainError, "zeta_even needs an even k >= 2");
  Rational c = bernoulli_number(k) * Rational(ipow(2, k)) / Rational(2 * factorial(k));
  if ((k / 2) % 2 == 0) c = -c;  // (-1)^{k/2+1}
  return {c, static_cast<long>(k), 0, 1};
}

AlgebraicValue dirichlet_L_odd(long D, unsigned k) {
  if (k % 2 == 0) throw Error(Errc::DomainError, "dirichlet_L_odd needs odd k");
  // L(k, chi) = (-1)^{(k+1)/2} sqrt(D) (2 pi)^k B_{k,chi} / (2 D^k k!)
  //           = [(-1)^{(k+1)/2} 2^k B_{k,chi} D^{1-k} / (2 k!)] pi^k D^{-1/2}.
  Rational c = generalized_bernoulli(D, k) * Rational(ipow(2, k)) /
               Rational(2 * factorial(k) * ipow(Integer(D), k - 1));
  if (((k + 1) / 2) % 2) c = -c;
  return {c, static_cast<long>(k), -1, D};
}

Real numeric_eval(const AlgebraicValue& v, unsigned digits) {
  Interval iv = v.enclose(digits_to_bits(digits) + 32);
  Real m = iv.midpoint();
  Real out(digits_to_bits(digits));
  mpfr_set(out.get(), m.get(), MPFR_RNDN);
  return out;
}

}  // namespace covol::arith
