#include "covol/freeness.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "covol/error.hpp"

namespace covol::freeness {

using arith::ipow;
using arith::ratio;

namespace {

// Runs fn(i) for i in [0, count) on up to `jobs` threads; results stay indexed
// so the merge order never depends on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, Fn fn) {
  std::vector<T> out(count);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count ? count : 1)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= count || failure) return;
        i = next++;
      }
      try {
        T v = fn(i);
        std::lock_guard<std::mutex> lock(mu);
        out[i] = std::move(v);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

Interval one(mpfr_prec_t bits) { return Interval::from_rational(1, bits); }

// sign of (lhs - rhs) for two exact-ish quantities
int cmp(const std::function<Interval(mpfr_prec_t)>& lhs, const std::function<Interval(mpfr_prec_t)>& rhs) {
  return compare_certified([&](mpfr_prec_t bits) { return std::make_pair(lhs(bits), rhs(bits)); });
}

}  // namespace

bool epsilon_constraints_hold(const Rational& eps) {
  auto pw = [](long b, const Rational& e) {
    return [b, e](mpfr_prec_t bits) { return Interval::rational_power(b, e, bits); };
  };
  auto scaled = [](Rational c, std::function<Interval(mpfr_prec_t)> f) {
    return [c, f](mpfr_prec_t bits) { return Interval::from_rational(c, bits) * f(bits); };
  };
  auto sqrt3 = [](mpfr_prec_t bits) { return Interval::sqrt_of(3, bits); };
  auto two_over_sqrt3 = [](mpfr_prec_t bits) { return Interval::from_rational(2, bits) / Interval::sqrt_of(3, bits); };
  const Rational c16(16, 5);
  // (16/5) 2^{-(1-eps)} < sqrt 3
  if (cmp(scaled(c16, pw(2, eps - 1)), sqrt3) >= 0) return false;
  // max{(16/5) 3^{-(1-eps)}, 5 * 3^{-(3/2-eps)}} <= 2/sqrt 3
  if (cmp(scaled(c16, pw(3, eps - 1)), two_over_sqrt3) > 0) return false;
  if (cmp(scaled(5, pw(3, eps - Rational(3, 2))), two_over_sqrt3) > 0) return false;
  // max{(16/5) 5^{-(1-eps)}, 5 * 5^{-(3/2-eps)}} < 1
  if (cmp(scaled(c16, pw(5, eps - 1)), one) >= 0) return false;
  if (cmp(scaled(5, pw(5, eps - Rational(3, 2))), one) >= 0) return false;
  return true;
}

Rational epsilon() {
  static const Rational value = [] {
    long lo = 0, hi = 10000;  // constraints hold at lo, fail at hi
    while (hi - lo > 1) {
      long mid = (lo + hi) / 2;
      (epsilon_constraints_hold(Rational(mid, 10000)) ? lo : hi) = mid;
    }
    return ratio(lo, 10000);
  }();
  return value;
}

Integer N_of_L(const HermitianLattice& L) {
  Integer N = 1;
  for (long p : local::relevant_primes(L)) {
    auto prof = local::local_profile(L, p);
    N *= ipow(Integer(p), static_cast<unsigned long>(prof.N_v()));
  }
  return N;
}

long N_scale(long D) { return D == 3 ? 9 : 4; }

Integer reflective_count(int n, long D) {
  const unsigned long e = 2 * static_cast<unsigned long>(n) + 1;
  if (D == 3) return 5 + 4 * ipow(3, e) + 3 * ipow(4, e);
  return 1 + 2 * ipow(2, e) + ipow(4, e);
}

AlgebraicValue f_bound(int n, long D) {
  Rational c = ratio(reflective_count(n, D) * 2 * ipow(2, n + 1), arith::factorial(n + 1));
  return {c, n + 1, -n, D};
}

bool f_criterion_holds(int n, long D, const Integer& N) {
  const AlgebraicValue f = f_bound(n, D);
  const Rational base = ratio(N, N_scale(D));
  return cmp([&](mpfr_prec_t b) { return f.enclose(b); },
             [&](mpfr_prec_t b) {
               return base > 1 ? Interval::rational_power(base, epsilon(), b) : one(b);
             }) < 0;
}

Interval BoundValue::enclose(mpfr_prec_t bits) const {
  Interval r = base.enclose(bits);
  if (sgn(power_exp) != 0 && power_base != 1) r = r * Interval::rational_power(power_base, power_exp, bits);
  return r;
}

Real BoundValue::numeric(unsigned digits) const {
  Real m = enclose(digits_to_bits(digits) + 32).midpoint();
  Real out(digits_to_bits(digits));
  mpfr_set(out.get(), m.get(), MPFR_RNDN);
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NotFree: return "NOT_FREE";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::NotFreeUnimodular: return "NOT_FREE_UNIMODULAR";
  }
  return "?";
}

std::string to_string(SlopeVerdict v) {
  return v == SlopeVerdict::NoSuchForm ? "NO_SUCH_FORM" : "INCONCLUSIVE";
}

CriterionReport nonfree_criterion(const HermitianLattice& L) {
  auto [pos, neg] = hermitian::signature(L);
  if (pos != 1 || neg < 3)
    throw Error(Errc::NotSignature1N, "signature (" + std::to_string(pos) + "," + std::to_string(neg) +
                                          ") is not (1,n) with n > 2");
  CriterionReport rep;
  rep.n = neg;
  rep.D = L.D();
  rep.epsilon = epsilon();
  rep.unimodular = hermitian::is_unimodular(L);
  rep.threshold = 2 * (rep.n + 1);
  rep.N = 1;
  for (long p : local::relevant_primes(L)) {
    PlaceRow row;
    row.profile = local::local_profile(L, p);
    row.N_v = row.profile.N_v();
    row.phi_sum = local::phi_sum(row.profile, rep.n);
    row.phi_bound = local::phi_sum_bound(row.profile, rep.n);
    row.within_bound = (row.phi_sum - local::QuadSurd::from(row.phi_bound)).sign() <= 0;
    rep.N *= ipow(Integer(p), static_cast<unsigned long>(row.N_v));
    rep.places.push_back(row);
  }
  // With the standard coefficients (r-1)/r folded in, the sum is bounded by
  // count * 2^2 (2pi)^{n+1} / (n! D^{n/2} max{1, (N/s)^eps}).
  const int n = rep.n;
  rep.bound_value.base = {ratio(reflective_count(n, rep.D) * 4 * ipow(2, n + 1), arith::factorial(n)), n + 1, -n,
                          rep.D};
  const Rational base = ratio(rep.N, N_scale(rep.D));
  if (base > 1) {
    rep.bound_value.power_base = base;
    rep.bound_value.power_exp = -rep.epsilon;
  }
  const bool below = cmp([&](mpfr_prec_t b) { return rep.bound_value.enclose(b); },
                         [&](mpfr_prec_t b) { return Interval::from_rational(Rational(rep.threshold), b); }) < 0;
  if (rep.unimodular && rep.D != 3) rep.verdict = Verdict::NotFreeUnimodular;
  else rep.verdict = below ? Verdict::NotFree : Verdict::Inconclusive;
  return rep;
}

BoundValue split_sum_bound(int n, long D, const Integer& N) {
  BoundValue v;
  v.base = {ratio(4 * ipow(2, n + 1), arith::factorial(n)), n + 1, -n, D};
  v.power_base = Rational(N);
  v.power_exp = -epsilon();
  return v;
}

BoundValue split_sum_bound(const HermitianLattice& L) {
  auto [pos, neg] = hermitian::signature(L);
  (void)pos;
  return split_sum_bound(neg, L.D(), N_of_L(L));
}

AlgebraicValue g_slope_bound(int n, long D) {
  const unsigned long e = 2 * static_cast<unsigned long>(n) + 1;
  Integer c = D == 3 ? Integer(6 * (1 + ipow(3, e) + ipow(4, e))) : Integer(2 * reflective_count(n, D));
  return {ratio(arith::factorial(n), 4 * ipow(2, n + 1) * c), -(n + 1), n, D};
}

SlopeReport reflective_check(int n, long D, const Rational& slope) {
  SlopeReport rep;
  rep.n = n;
  rep.D = D;
  rep.g_value = g_slope_bound(n, D);
  rep.slope_queried = slope;
  auto g = [&](mpfr_prec_t b) { return rep.g_value.enclose(b); };
  const bool below = cmp([&](mpfr_prec_t b) { return Interval::from_rational(slope, b); }, g) <= 0;
  rep.verdict = below ? SlopeVerdict::NoSuchForm : SlopeVerdict::Inconclusive;
  rep.corollary_holds = cmp([&](mpfr_prec_t b) { return Interval::from_rational(ratio(1, n + 1), b); }, g) <= 0;
  return rep;
}

ThresholdReport threshold_scan(long D, int n_max, unsigned jobs) {
  if (n_max < 10) throw Error(Errc::DomainError, "n_max must be at least 10");
  if (!arith::is_valid_discriminant(D)) throw Error(Errc::DomainError, "invalid D");
  ThresholdReport rep;
  rep.D = D;
  rep.n_max = n_max;
  const std::size_t count = static_cast<std::size_t>(n_max - 2);
  auto below = parallel_map<char>(count, jobs, [&](std::size_t i) {
    return static_cast<char>(f_criterion_holds(static_cast<int>(i) + 3, D, 1));
  });
  int last_fail = 2;
  for (std::size_t i = 0; i < count; ++i)
    if (!below[i]) {
      rep.failing_n.push_back(static_cast<int>(i) + 3);
      last_fail = static_cast<int>(i) + 3;
    }
  if (last_fail == n_max) return rep;
  rep.threshold_n = last_fail + 1;
  const int n0 = *rep.threshold_n;
  auto decreasing = parallel_map<char>(static_cast<std::size_t>(n_max - n0), jobs, [&](std::size_t i) {
    const int n = n0 + static_cast<int>(i);
    const AlgebraicValue r = f_bound(n + 1, D) / f_bound(n, D);
    return static_cast<char>(cmp([&](mpfr_prec_t b) { return r.enclose(b); }, one) < 0);
  });
  rep.monotone_tail = std::all_of(decreasing.begin(), decreasing.end(), [](char c) { return c != 0; });
  return rep;
}

std::vector<ExceptionRange> exception_ranges(int n_min, long D_max, const Integer& N_max, unsigned jobs) {
  if (n_min < 3) throw Error(Errc::DomainError, "n_min must be at least 3");
  if (N_max < 1) throw Error(Errc::DomainError, "N_max must be positive");
  std::vector<long> Ds;
  for (long D = 3; D <= D_max; ++D)
    if (arith::is_valid_discriminant(D)) Ds.push_back(D);
  // f(n+1)/f(n) < 32 pi / ((n+2) sqrt D) < 1 once (n+2)^2 D > (32 pi)^2 ~ 10106.2,
  // so past that point a single f < 1 ends the scan for this D.
  auto per_D = parallel_map<std::vector<ExceptionRange>>(Ds.size(), jobs, [&](std::size_t i) {
    const long D = Ds[i];
    std::vector<ExceptionRange> out;
    for (int n = n_min;; ++n) {
      const bool decreasing_from_here = static_cast<long>(n + 2) * (n + 2) * D > 10107;
      if (f_criterion_holds(n, D, 1)) {
        if (decreasing_from_here) break;
        continue;
      }
      Integer lo = 1, hi = N_max;  // exception at lo; find the last N that is one
      if (!f_criterion_holds(n, D, hi)) lo = hi;
      while (hi - lo > 1) {
        Integer mid = (lo + hi) / 2;
        (f_criterion_holds(n, D, mid) ? hi : lo) = mid;
      }
      out.push_back({D, n, lo});
      if (n > 100000) throw Error(Errc::DomainError, "exception scan did not terminate");
    }
    return out;
  });
  std::vector<ExceptionRange> all;
  for (auto& v : per_D) all.insert(all.end(), v.begin(), v.end());
  return all;
}

std::vector<ExceptionTriple> exception_search(int n_min, long D_max, const Integer& N_max, unsigned jobs) {
  std::vector<ExceptionTriple> out;
  for (const auto& r : exception_ranges(n_min, D_max, N_max, jobs))
    for (Integer N = 1; N <= r.N_upper; ++N) out.push_back({r.n, r.D, N});
  return out;
}

CubicReport cubic_example() {
  CubicReport rep;
  const long D = 3, p = 3;
  auto make = [&](std::string name, int n, std::vector<local::JordanBlock> blocks) {
    CubicLambda c;
    c.name = std::move(name);
    c.n = n;
    c.profile = local::make_profile(D, p, std::move(blocks));
    for (const auto& r : local::resolutions(c.profile))
      c.candidates.push_back(local::lambda_M(r, n) * local::LocalValue::make(local::ind(r), 0, p));
    return c;
  };
  rep.lambdas.push_back(make("L_cub", 10, {{0, 10, 0}, {2, 1, 0}}));
  rep.lambdas.push_back(make("L_n", 9, {{0, 9, 0}, {2, 1, 0}}));
  rep.lambdas.push_back(make("L_h", 9, {{0, 8, 0}, {2, 2, 0}}));
  const auto& base = rep.lambdas[0];
  for (std::size_t k = 1; k < rep.lambdas.size(); ++k) {
    CubicRatio cr;
    cr.name = rep.lambdas[k].name + "/" + base.name;
    bool first = true;
    for (const auto& num : rep.lambdas[k].candidates)
      for (const auto& den : base.candidates) {
        local::LocalValue r = num / den;
        if (first || local::compare(r, cr.min_ratio) < 0) cr.min_ratio = r;
        if (first || local::compare(r, cr.max_ratio) > 0) cr.max_ratio = r;
        first = false;
      }
    cr.holds = local::compare(cr.max_ratio, local::LocalValue::make(1, 0, p)) <= 0;
    rep.ratios.push_back(cr);
  }

  rep.weights = Rational(5, 6) + Rational(2, 3);
  const AlgebraicValue two_pi_11{ipow(2, 11), 11, 0, 1};
  const AlgebraicValue three_pow{1, 0, 21, D};  // 3^{10 + 1/2}
  const AlgebraicValue fact10 = AlgebraicValue::rational(Rational(arith::factorial(10)));
  const AlgebraicValue L11 = arith::dirichlet_L_odd(D, 11);
  const AlgebraicValue w = AlgebraicValue::rational(rep.weights);
  rep.trace = {{"(2pi)^11", two_pi_11}, {"3^(10+1/2)", three_pow}, {"10!", fact10}, {"L(11)", L11},
               {"5/6+2/3", w}};
  rep.lhs = two_pi_11 / (three_pow * fact10 * L11) * w;
  rep.lhs_exact = rep.lhs.to_rational();
  rep.rhs = 22;
  rep.lhs_below_rhs = rep.lhs_exact < Rational(rep.rhs);
  const bool ratios_ok = std::all_of(rep.ratios.begin(), rep.ratios.end(), [](const CubicRatio& r) { return r.holds; });
  rep.verdict = rep.lhs_below_rhs && ratios_ok ? "NOT_FREE" : "EXAMPLE_MISMATCH";
  return rep;
}

}  // namespace covol::freeness
