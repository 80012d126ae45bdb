#include "covol/covolume.hpp"

#include <future>
#include <numeric>

#include "covol/error.hpp"

namespace covol::volume {

using arith::AlgebraicValue;

namespace {

AlgebraicValue as_algebraic(const local::LocalValue& v, long p) {
  if (!v.is_rational())
    throw Error(Errc::RationalityViolation,
                "local factor at p = " + std::to_string(p) + " is irrational: " + v.to_string());
  return AlgebraicValue::rational(v.coeff);
}

CovolumeResult scaled(CovolumeResult r, int factor) {
  r.value *= factor;
  r.exact = r.exact * AlgebraicValue::rational(factor);
  r.center_order *= factor;
  r.formula_trace.push_back({"center factor", AlgebraicValue::rational(factor)});
  r.numeric = arith::numeric_eval(AlgebraicValue::rational(r.value), 30);
  return r;
}

}  // namespace

CovolumeResult assemble_covolume(long D, int n, const std::vector<local::LocalProfile>& profiles) {
  if (n < 1) throw Error(Errc::DomainError, "n must be positive");
  CovolumeResult res;
  res.D = D;
  res.n = n;
  auto& tr = res.formula_trace;
  const long k = n / 2;
  tr.push_back({"D^(k(k+3/2)), k = floor(n/2)", {1, 0, 2 * k * k + 3 * k, D}});
  for (int i = 1; i <= n; ++i)
    tr.push_back({std::to_string(i) + "!/(2pi)^" + std::to_string(i + 1),
                  {arith::ratio(arith::factorial(i), arith::ipow(2, i + 1)), -(i + 1), 0, 1}});
  for (int i = 1; i <= (n + 1) / 2; ++i)
    tr.push_back({"zeta(" + std::to_string(2 * i) + ")", arith::zeta_even(2 * i)});
  for (int i = 1; i <= k; ++i)
    tr.push_back({"L(" + std::to_string(2 * i + 1) + ")", arith::dirichlet_L_odd(D, 2 * i + 1)});

  std::vector<std::future<local::LocalValue>> jobs;
  for (const auto& prof : profiles)
    jobs.push_back(std::async(std::launch::async, [&prof, n] { return local::lambda(prof, n); }));
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const long p = profiles[i].p;
    local::LocalValue lam = jobs[i].get();
    res.local_factors[p] = lam;
    res.profiles[p] = profiles[i];
    tr.push_back({"lambda_" + std::to_string(p), as_algebraic(lam, p)});
  }

  AlgebraicValue total = AlgebraicValue::rational(1);
  for (const auto& f : tr) total = total * f.value;
  res.exact = total;
  if (!total.is_rational())
    throw Error(Errc::RationalityViolation, "assembled covolume " + total.to_string() + " is not rational");
  res.value = total.to_rational();
  if (sgn(res.value) <= 0) throw Error(Errc::RationalityViolation, "covolume is not positive");
  res.numeric = arith::numeric_eval(AlgebraicValue::rational(res.value), 30);
  return res;
}

CovolumeResult su_covolume(const hermitian::HermitianLattice& L) {
  auto [pos, neg] = hermitian::signature(L);
  if (pos != 1 || neg < 3)
    throw Error(Errc::NotSignature1N, "signature (" + std::to_string(pos) + "," + std::to_string(neg) +
                                          ") is not (1,n) with n > 2");
  std::vector<local::LocalProfile> profiles;
  for (long p : local::relevant_primes(L)) profiles.push_back(local::local_profile(L, p));
  return assemble_covolume(L.D(), neg, profiles);
}

int center_order(const hermitian::HermitianLattice& L) { return L.D() == 3 ? 6 : 2; }

int su_center_order(const hermitian::HermitianLattice& L) {
  return std::gcd(static_cast<int>(L.rank()), center_order(L));
}

CovolumeResult hm_volume_su(const hermitian::HermitianLattice& L) {
  return scaled(su_covolume(L), su_center_order(L));
}

std::pair<CovolumeResult, CovolumeResult> hm_bounds_U(const hermitian::HermitianLattice& L) {
  CovolumeResult lower = su_covolume(L);
  CovolumeResult upper = scaled(lower, center_order(L));
  return {lower, upper};
}

}  // namespace covol::volume
