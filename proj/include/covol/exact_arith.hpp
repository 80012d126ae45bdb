#pragma once

#include <string>

#include "covol/numeric.hpp"

namespace covol::arith {

/// B_k with the convention B_1 = -1/2.
Rational bernoulli_number(unsigned k);
/// B_k(x) = sum_j C(k,j) B_j x^{k-j}.
Rational bernoulli_polynomial(unsigned k, const Rational& x);

/// Kronecker symbol (a/n) for n >= 1.
int kronecker(const Integer& a, const Integer& n);
/// The quadratic character chi_{-D}(a) = (-D/a) attached to Q(sqrt(-D)).
int chi(long D, const Integer& a);

/// Valid odd discriminant magnitudes: D squarefree, D = 3 mod 4.
bool is_valid_discriminant(long D);

/// B_{k,chi} = D^{k-1} sum_{a=1}^{D} chi_{-D}(a) B_k(a/D).
Rational generalized_bernoulli(long D, unsigned k);

/// coeff * pi^pi_exp * D^(sqrtD_exp/2).
struct AlgebraicValue {
  Rational coeff{1};
  long pi_exp = 0;
  long sqrtD_exp = 0;
  long D = 1;

  static AlgebraicValue rational(const Rational& q) { return {q, 0, 0, 1}; }

  bool is_rational() const { return pi_exp == 0 && sqrtD_exp % 2 == 0; }
  /// Folds the D-power into the coefficient; throws RationalityViolation
  /// unless is_rational().
  Rational to_rational() const;

  AlgebraicValue operator*(const AlgebraicValue& o) const;
  AlgebraicValue operator/(const AlgebraicValue& o) const;
  AlgebraicValue pow(long e) const;
  bool operator==(const AlgebraicValue& o) const;

  Interval enclose(mpfr_prec_t bits) const;
  std::string to_string() const;
};

AlgebraicValue zeta_even(unsigned k);
AlgebraicValue dirichlet_L_odd(long D, unsigned k);

/// Rounded-to-nearest evaluation carrying `digits` significant decimals.
Real numeric_eval(const AlgebraicValue& v, unsigned digits);

/// num/den in lowest terms.
Rational ratio(const Integer& num, const Integer& den);
Integer factorial(unsigned n);
Integer ipow(const Integer& b, unsigned long e);
Rational rpow(const Rational& b, long e);

}  // namespace covol::arith
