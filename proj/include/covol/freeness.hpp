#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covol/exact_arith.hpp"
#include "covol/hermitian.hpp"
#include "covol/local_profile.hpp"

namespace covol::freeness {

using arith::AlgebraicValue;
using hermitian::HermitianLattice;

/// Largest 4-decimal rational meeting the three constraints of the
/// split-ratio lemma, rounded down (0.0721).
Rational epsilon();
/// Checks the three constraints at a given eps (certified).
bool epsilon_constraints_hold(const Rational& eps);

Integer N_of_L(const HermitianLattice& L);

/// 4 in general, 9 for D = 3: the N-normaliser in max{1, (N/s)^eps}.
long N_scale(long D);
/// 1 + 2*2^{2n+1} + 4^{2n+1}, or 5 + 4*3^{2n+1} + 3*4^{2n+1} for D = 3.
Integer reflective_count(int n, long D);
/// f(n, D) = reflective_count * 2 (2pi)^{n+1} / ((n+1)! D^{n/2}).
AlgebraicValue f_bound(int n, long D);
/// Certified f(n, D) < max{1, (N/s)^eps}.
bool f_criterion_holds(int n, long D, const Integer& N);

/// value = base * power_base^power_exp.
struct BoundValue {
  AlgebraicValue base;
  Rational power_base{1};
  Rational power_exp{0};
  Interval enclose(mpfr_prec_t bits) const;
  Real numeric(unsigned digits) const;
};

enum class Verdict { NotFree, Inconclusive, NotFreeUnimodular };
std::string to_string(Verdict v);

struct PlaceRow {
  local::LocalProfile profile;
  int N_v = 0;
  local::QuadSurd phi_sum;
  local::LocalValue phi_bound;
  bool within_bound = true;
};

struct CriterionReport {
  int n = 0;
  long D = 0;
  Integer N;
  Rational epsilon;
  bool unimodular = false;
  /// Weighted sum bound  sum (r-1)/r * vol ratio  <  bound_value.
  BoundValue bound_value;
  Integer threshold;  // 2(n+1)
  Verdict verdict = Verdict::Inconclusive;
  std::vector<PlaceRow> places;
};

CriterionReport nonfree_criterion(const HermitianLattice& L);

/// 4 (2pi)^{n+1} / (n! D^{n/2} N^eps).
BoundValue split_sum_bound(const HermitianLattice& L);
BoundValue split_sum_bound(int n, long D, const Integer& N);

AlgebraicValue g_slope_bound(int n, long D);

enum class SlopeVerdict { NoSuchForm, Inconclusive };
std::string to_string(SlopeVerdict v);

struct SlopeReport {
  int n = 0;
  long D = 0;
  AlgebraicValue g_value;
  Rational slope_queried;
  SlopeVerdict verdict = SlopeVerdict::Inconclusive;
  bool corollary_holds = false;  // g(n,D) >= 1/(n+1)
};

SlopeReport reflective_check(int n, long D, const Rational& slope);

struct ThresholdReport {
  long D = 0;
  int n_max = 0;
  std::optional<int> threshold_n;
  bool monotone_tail = false;
  std::vector<int> failing_n;  // n in [3, n_max] with f(n, D) >= 1
};

ThresholdReport threshold_scan(long D, int n_max, unsigned jobs = 1);

struct ExceptionRange {
  long D = 0;
  int n = 0;
  Integer N_upper;  // every N in [1, N_upper] is an exception
};

struct ExceptionTriple {
  int n;
  long D;
  Integer N;
};

std::vector<ExceptionRange> exception_ranges(int n_min, long D_max, const Integer& N_max, unsigned jobs = 1);
std::vector<ExceptionTriple> exception_search(int n_min, long D_max, const Integer& N_max, unsigned jobs = 1);

struct CubicLambda {
  std::string name;
  int n = 0;
  local::LocalProfile profile;
  std::vector<local::LocalValue> candidates;  // one per square-class resolution
};

struct CubicRatio {
  std::string name;  // e.g. "L_n/L_cub"
  local::LocalValue min_ratio, max_ratio;
  bool holds = false;  // max_ratio <= 1
};

struct CubicReport {
  std::vector<CubicLambda> lambdas;
  std::vector<CubicRatio> ratios;
  Rational weights;  // 5/6 + 2/3
  AlgebraicValue lhs;
  Rational lhs_exact;
  Integer rhs;  // 22
  bool lhs_below_rhs = false;
  std::string verdict;  // NOT_FREE or EXAMPLE_MISMATCH
  std::vector<std::pair<std::string, AlgebraicValue>> trace;
};

CubicReport cubic_example();

}  // namespace covol::freeness
