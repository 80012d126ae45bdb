#include "covol/local_profile.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

#include "covol/error.hpp"
#include "covol/exact_arith.hpp"

namespace covol::local {

using hermitian::FieldElem;
using arith::ipow;

std::string_view to_string(PlaceType t) {
  switch (t) {
    case PlaceType::Inert: return "INERT";
    case PlaceType::Split: return "SPLIT";
    case PlaceType::Ramified: return "RAMIFIED";
  }
  return "?";
}

std::string_view to_string(GroupKind k) {
  switch (k) {
    case GroupKind::Unitary: return "UNITARY";
    case GroupKind::GeneralLinear: return "GENERAL_LINEAR";
    case GroupKind::Symplectic: return "SYMPLECTIC";
    case GroupKind::OrthogonalOdd: return "ORTHOGONAL_ODD";
    case GroupKind::OrthogonalEvenPlus: return "ORTHOGONAL_EVEN_PLUS";
    case GroupKind::OrthogonalEvenMinus: return "ORTHOGONAL_EVEN_MINUS";
  }
  return "?";
}

PlaceType place_type(long D, long p) {
  if (D % p == 0) return PlaceType::Ramified;
  return arith::kronecker(Integer(-D), Integer(p)) == 1 ? PlaceType::Split : PlaceType::Inert;
}

namespace {

// ---- factorisation -------------------------------------------------------

Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(Integer n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<long> prime_divisors(const Integer& value) {
  if (value == 0) throw Error(Errc::DomainError, "prime divisors of zero");
  Integer n = abs(value);
  std::vector<Integer> ps;
  for (unsigned long p = 2; p < 10000 && n > 1; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ps.push_back(Integer(p));
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  factor_into(n, ps);
  std::vector<long> out;
  for (auto& p : ps) {
    if (!p.fits_slong_p()) throw Error(Errc::DomainError, "prime factor " + p.get_str() + " is too large");
    out.push_back(p.get_si());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<long> relevant_primes(const HermitianLattice& L) {
  Integer det = hermitian::det_gram(L);
  if (det == 0) throw Error(Errc::Degenerate, "Gram matrix is singular");
  return prime_divisors(det * L.D());
}

int legendre(const Integer& a, long p) {
  int s = mpz_legendre(Integer(a % p).get_mpz_t(), Integer(p).get_mpz_t());
  if (s == 0) throw Error(Errc::DomainError, "legendre symbol of a non-unit");
  return s;
}

namespace {

long vp(const Integer& x, long p) {
  if (x == 0) return LONG_MAX;
  Integer t = x;
  return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), Integer(p).get_mpz_t()));
}

long vp(const Rational& x, long p) {
  if (sgn(x) == 0) return LONG_MAX;
  return vp(x.get_num(), p) - vp(x.get_den(), p);
}

// Square root of a modulo an odd prime p (a a quadratic residue).
Integer sqrt_mod(const Integer& a, long p) {
  Integer P(p), r;
  Integer x = ((a % P) + P) % P;
  if (x == 0) return 0;
  // Tonelli-Shanks.
  long s = 0;
  Integer qq = P - 1;
  while (mpz_even_p(qq.get_mpz_t())) {
    qq /= 2;
    ++s;
  }
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), P.get_mpz_t()) != -1) ++z;
  Integer c, t, R, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), qq.get_mpz_t(), P.get_mpz_t());
  e = (qq + 1) / 2;
  mpz_powm(R.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
  mpz_powm(t.get_mpz_t(), x.get_mpz_t(), qq.get_mpz_t(), P.get_mpz_t());
  long m = s;
  while (t != 1) {
    long i = 0;
    Integer tt = t;
    while (tt != 1) {
      tt = (tt * tt) % P;
      ++i;
    }
    Integer b = c;
    for (long j = 0; j < m - i - 1; ++j) b = (b * b) % P;
    R = (R * b) % P;
    c = (b * b) % P;
    t = (t * c) % P;
    m = i;
  }
  return R;
}

Integer mod(const Integer& x, const Integer& m) { return ((x % m) + m) % m; }

}  // namespace

Integer hensel_root(long D, long p, unsigned K) {
  if (place_type(D, p) != PlaceType::Split) throw Error(Errc::DomainError, "hensel_root needs a split prime");
  const Integer c((1 + D) / 4);
  Integer r;
  if (p == 2) {
    r = 0;  // c is even when 2 splits, so x(x-1) = 0 mod 2
  } else {
    // (2x - 1)^2 = -D mod p.
    Integer s = sqrt_mod(Integer(-D), p);
    Integer inv2 = (Integer(p) + 1) / 2;
    r = mod((s + 1) * inv2, Integer(p));
  }
  Integer pk = ipow(Integer(p), K);
  // Newton iteration; f'(r) = 2r - 1 is a unit because p does not divide D.
  for (unsigned prec = 1; prec < K; prec *= 2) {
    Integer f = r * r - r + c, fp = 2 * r - 1, inv;
    mpz_invert(inv.get_mpz_t(), fp.get_mpz_t(), pk.get_mpz_t());
    r = mod(r - f * inv, pk);
  }
  return mod(r, pk);
}

long elem_valuation(const RingElem& x, long p, PlaceType type, long D) {
  if (x.is_zero()) throw Error(Errc::ZeroElement, "valuation of zero");
  auto F = hermitian::make_field(D);
  long vn = vp(hermitian::norm(x, F), p);
  switch (type) {
    case PlaceType::Inert: return vn / 2;
    case PlaceType::Ramified: return vn;
    case PlaceType::Split: {
      Integer pk = ipow(Integer(p), static_cast<unsigned long>(vn + 1));
      Integer r = hensel_root(D, p, static_cast<unsigned>(vn + 1));
      Integer r2 = mod(1 - r, pk);  // the other root
      long v1 = vp(mod(x.a + x.b * r, pk), p), v2 = vp(mod(x.a + x.b * r2, pk), p);
      return std::min(std::min(v1, v2), vn + 1);
    }
  }
  return 0;
}

int LocalProfile::rank() const {
  int r = 0;
  for (const auto& b : jordan) r += b.rank;
  return r;
}

int LocalProfile::rank_at(int i) const {
  for (const auto& b : jordan)
    if (b.index == i) return b.rank;
  return 0;
}

int LocalProfile::i_rel_m(int m) const {
  int count = 0;
  for (const auto& b : jordan)
    if (b.index != m_min() && b.index != m_max() && b.index != m) ++count;
  return count;
}

bool LocalProfile::ambiguous() const {
  if (type != PlaceType::Ramified) return false;
  for (const auto& b : jordan)
    if (b.index % 2 == 0 && b.disc == 0) return true;
  return false;
}

std::vector<std::pair<int, int>> LocalProfile::ranks() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& b : jordan) out.emplace_back(b.index, b.rank);
  return out;
}

LocalProfile make_profile(long D, long p, std::vector<JordanBlock> blocks) {
  LocalProfile prof;
  prof.p = p;
  prof.D = D;
  prof.type = place_type(D, p);
  std::map<int, JordanBlock> merged;
  for (const auto& b : blocks) {
    if (b.rank < 0 || b.index < 0) throw Error(Errc::DomainError, "negative Jordan data");
    if (b.rank == 0) continue;
    auto [it, fresh] = merged.try_emplace(b.index, b);
    if (!fresh) {
      it->second.rank += b.rank;
      it->second.disc = (it->second.disc == 0 || b.disc == 0) ? 0 : it->second.disc * b.disc;
    }
  }
  if (merged.empty()) throw Error(Errc::DomainError, "empty Jordan profile");
  for (auto& [i, b] : merged) {
    if (prof.type != PlaceType::Ramified || i % 2) b.disc = 0;
    if (prof.type == PlaceType::Ramified && i % 2 && b.rank % 2)
      throw Error(Errc::OddSymplecticRank, "odd-index ramified block of odd rank");
    prof.jordan.push_back(b);
  }
  return prof;
}

std::vector<LocalProfile> resolutions(const LocalProfile& profile) {
  std::vector<LocalProfile> out{profile};
  for (std::size_t k = 0; k < profile.jordan.size(); ++k) {
    const auto& b = profile.jordan[k];
    if (profile.type != PlaceType::Ramified || b.index % 2 || b.disc != 0) continue;
    std::vector<LocalProfile> next;
    for (auto& pr : out)
      for (int s : {1, -1}) {
        LocalProfile c = pr;
        c.jordan[k].disc = s;
        next.push_back(c);
      }
    out = std::move(next);
  }
  return out;
}

// ---- Jordan decomposition -------------------------------------------------

namespace {

struct Piece {
  long index;
  int rank;
  Rational det;
};

// Valuation of x in the uniformiser of E_v (inert / ramified places).
long field_valuation(const FieldElem& x, long p, PlaceType type) {
  if (x.is_zero()) return LONG_MAX;
  long v = vp(x.norm(), p);
  return type == PlaceType::Inert ? v / 2 : v;
}

// Hermitian congruence elimination over E with exact rationals.
std::vector<Piece> eliminate(const HermitianLattice& L, long p, PlaceType type) {
  const long c = L.field().c();
  std::vector<std::vector<FieldElem>> G(L.rank());
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t j = 0; j < L.rank(); ++j) G[i].emplace_back(L.at(i, j), c);
  std::vector<std::size_t> active(L.rank());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  std::vector<Piece> pieces;
  while (!active.empty()) {
    long best_diag = LONG_MAX, best_off = LONG_MAX;
    std::size_t di = 0, oi = 0, oj = 0;
    for (std::size_t a = 0; a < active.size(); ++a) {
      std::size_t i = active[a];
      long v = field_valuation(G[i][i], p, type);
      if (v < best_diag) best_diag = v, di = i;
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        std::size_t j = active[b];
        long w = field_valuation(G[i][j], p, type);
        if (w < best_off) best_off = w, oi = i, oj = j;
      }
    }
    if (best_diag == LONG_MAX && best_off == LONG_MAX)
      throw Error(Errc::Degenerate, "Gram matrix is singular");
    if (best_diag <= best_off) {
      const FieldElem inv = G[di][di].inverse();
      pieces.push_back({best_diag, 1, G[di][di].a()});
      active.erase(std::find(active.begin(), active.end(), di));
      for (std::size_t k : active)
        for (std::size_t l : active) G[k][l] = G[k][l] - G[k][di] * inv * G[di][l];
    } else {
      const FieldElem &a = G[oi][oi], &b = G[oi][oj], &bb = G[oj][oi], &d = G[oj][oj];
      const FieldElem det = a * d - b * bb;
      const FieldElem idet = det.inverse();
      // P^{-1} = det^{-1} [[d, -b], [-bb, a]]
      const FieldElem p00 = d * idet, p01 = -b * idet, p10 = -bb * idet, p11 = a * idet;
      pieces.push_back({best_off, 2, det.a()});
      active.erase(std::find(active.begin(), active.end(), oi));
      active.erase(std::find(active.begin(), active.end(), oj));
      for (std::size_t k : active)
        for (std::size_t l : active) {
          const FieldElem &x0 = G[k][oi], &x1 = G[k][oj], &y0 = G[oi][l], &y1 = G[oj][l];
          G[k][l] = G[k][l] - (x0 * (p00 * y0 + p01 * y1) + x1 * (p10 * y0 + p11 * y1));
        }
    }
  }
  return pieces;
}

// Smith form of the image of G under omega -> r, over Z/p^K.
std::vector<Piece> smith_split(const HermitianLattice& L, long p) {
  const Integer det = hermitian::det_gram(L);
  if (det == 0) throw Error(Errc::Degenerate, "Gram matrix is singular");
  const std::size_t n = L.rank();
  const unsigned K = static_cast<unsigned>(vp(det, p) + static_cast<long>(n) + 2);
  const Integer pk = ipow(Integer(p), K);
  const Integer r = hensel_root(L.D(), p, K);
  std::vector<std::vector<Integer>> A(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = mod(L.at(i, j).a + L.at(i, j).b * r, pk);
  auto val = [&](const Integer& x) { return x == 0 ? static_cast<long>(K) : vp(x, p); };
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k < n; ++k) {
    long best = LONG_MAX;
    std::size_t bi = k, bj = k;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        long v = val(A[i][j]);
        if (v < best) best = v, bi = i, bj = j;
      }
    if (best >= static_cast<long>(K)) throw Error(Errc::Degenerate, "Smith form ran out of precision");
    std::swap(A[k], A[bi]);
    for (auto& row : A) std::swap(row[k], row[bj]);
    const Integer pv = ipow(Integer(p), static_cast<unsigned long>(best));
    Integer unit = A[k][k] / pv, uinv;
    mpz_invert(uinv.get_mpz_t(), unit.get_mpz_t(), pk.get_mpz_t());
    for (std::size_t i = k + 1; i < n; ++i) {
      if (A[i][k] == 0) continue;
      Integer f = mod((A[i][k] / pv) * uinv, pk);
      for (std::size_t j = k; j < n; ++j) A[i][j] = mod(A[i][j] - f * A[k][j], pk);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (A[k][j] == 0) continue;
      Integer f = mod((A[k][j] / pv) * uinv, pk);
      for (std::size_t i = k; i < n; ++i) A[i][j] = mod(A[i][j] - f * A[i][k], pk);
    }
    pieces.push_back({best, 1, Rational(0)});
  }
  return pieces;
}

}  // namespace

LocalProfile local_profile(const HermitianLattice& L, long p) {
  const PlaceType type = place_type(L.D(), p);
  if (type == PlaceType::Ramified && p == 2) throw Error(Errc::DomainError, "ramified p = 2 is excluded");
  std::vector<Piece> pieces = type == PlaceType::Split ? smith_split(L, p) : eliminate(L, p, type);
  std::vector<JordanBlock> blocks;
  for (const auto& pc : pieces) {
    JordanBlock b{static_cast<int>(pc.index), pc.rank, 0};
    if (type == PlaceType::Ramified && pc.index % 2 == 0) {
      // Unit part of the block determinant: det / p^{(index/2) * rank}.
      Rational u = pc.det / Rational(ipow(Integer(p), static_cast<unsigned long>(pc.index / 2 * pc.rank)));
      b.disc = legendre(u.get_num() * u.get_den(), p);
    }
    blocks.push_back(b);
  }
  return make_profile(L.D(), p, blocks);
}

std::vector<std::pair<int, int>> jordan_ranks(const HermitianLattice& L, long p) {
  return local_profile(L, p).ranks();
}

// ---- finite groups --------------------------------------------------------

Integer group_order(GroupKind kind, int m, long qq) {
  if (m < 0) throw Error(Errc::DomainError, "negative group size");
  const Integer q(qq);
  if (kind == GroupKind::Symplectic && m % 2) throw Error(Errc::OddSymplecticRank, "symplectic rank must be even");
  if (kind == GroupKind::OrthogonalOdd && m % 2 == 0) throw Error(Errc::DomainError, "ORTHOGONAL_ODD needs odd size");
  if ((kind == GroupKind::OrthogonalEvenPlus || kind == GroupKind::OrthogonalEvenMinus) && m % 2)
    throw Error(Errc::DomainError, "ORTHOGONAL_EVEN needs even size");
  if (m == 0) return 1;
  Integer r = 1;
  switch (kind) {
    case GroupKind::GeneralLinear:
      r = ipow(q, static_cast<unsigned long>(m) * (m - 1) / 2);
      for (int i = 1; i <= m; ++i) r *= ipow(q, i) - 1;
      return r;
    case GroupKind::Unitary:
      r = ipow(q, static_cast<unsigned long>(m) * (m - 1) / 2);
      for (int i = 1; i <= m; ++i) r *= ipow(q, i) - (i % 2 ? -1 : 1);
      return r;
    case GroupKind::Symplectic: {
      const unsigned long k = m / 2;
      r = ipow(q, k * k);
      for (unsigned long i = 1; i <= k; ++i) r *= ipow(q, 2 * i) - 1;
      return r;
    }
    case GroupKind::OrthogonalOdd: {
      const unsigned long k = (m - 1) / 2;
      r = 2 * ipow(q, k * k);
      for (unsigned long i = 1; i <= k; ++i) r *= ipow(q, 2 * i) - 1;
      return r;
    }
    case GroupKind::OrthogonalEvenPlus:
    case GroupKind::OrthogonalEvenMinus: {
      const unsigned long k = m / 2;
      const int eps = kind == GroupKind::OrthogonalEvenPlus ? 1 : -1;
      r = 2 * ipow(q, k * (k - 1)) * (ipow(q, k) - eps);
      for (unsigned long i = 1; i < k; ++i) r *= ipow(q, 2 * i) - 1;
      return r;
    }
  }
  return r;
}

long group_dim(GroupKind kind, int m) {
  const long k = m / 2;
  switch (kind) {
    case GroupKind::GeneralLinear:
    case GroupKind::Unitary: return static_cast<long>(m) * m;
    case GroupKind::Symplectic:
      if (m % 2) throw Error(Errc::OddSymplecticRank, "symplectic rank must be even");
      return k * (2 * k + 1);
    case GroupKind::OrthogonalOdd: return k * (2 * k + 1);
    case GroupKind::OrthogonalEvenPlus:
    case GroupKind::OrthogonalEvenMinus: return k * (2 * k - 1);
  }
  return 0;
}

namespace {

GroupKind orthogonal_kind(int m, int disc, long p) {
  if (m % 2) return GroupKind::OrthogonalOdd;
  if (disc == 0) throw Error(Errc::DomainError, "orthogonal type is undetermined (ambiguous square class)");
  // Type + iff (-1)^{m/2} * disc is a square mod p.
  int minus_one = (p % 4 == 1) ? 1 : -1;
  int s = ((m / 2) % 2 ? minus_one : 1) * disc;
  return s == 1 ? GroupKind::OrthogonalEvenPlus : GroupKind::OrthogonalEvenMinus;
}

}  // namespace

ReductiveQuotient reductive_quotient(const LocalProfile& prof, Target target) {
  ReductiveQuotient rq;
  const long p = prof.p;
  const bool ram = prof.type == PlaceType::Ramified;
  const GroupKind unram = prof.type == PlaceType::Inert ? GroupKind::Unitary : GroupKind::GeneralLinear;
  if (target == Target::Lattice) {
    for (const auto& b : prof.jordan) {
      if (!ram) rq.blocks.emplace_back(unram, b.rank);
      else if (b.index % 2) rq.blocks.emplace_back(GroupKind::Symplectic, b.rank);
      else rq.blocks.emplace_back(orthogonal_kind(b.rank, b.disc, p), b.rank);
    }
  } else {
    int even = 0, odd = 0, disc = 1;
    const int delta = ram ? legendre(Integer(prof.D / p), p) : 1;
    for (const auto& b : prof.jordan) {
      if (b.index % 2) {
        odd += b.rank;
        continue;
      }
      even += b.rank;
      if (ram) {
        // pi^{-k} L_{2k} carries D^{-k} times the form.
        int d = b.disc;
        if (d != 0 && (static_cast<long>(b.index / 2) * b.rank) % 2) d *= delta;
        disc = (disc == 0 || d == 0) ? 0 : disc * d;
      }
    }
    if (!ram) {
      if (even) rq.blocks.emplace_back(unram, even);
      if (odd) rq.blocks.emplace_back(unram, odd);
    } else {
      if (even) rq.blocks.emplace_back(orthogonal_kind(even, disc, p), even);
      if (odd) rq.blocks.emplace_back(GroupKind::Symplectic, odd);
    }
  }
  bool orthogonal = false;
  for (const auto& [kind, m] : rq.blocks) {
    rq.order *= group_order(kind, m, p);
    rq.dim += group_dim(kind, m);
    orthogonal = orthogonal || kind == GroupKind::OrthogonalOdd ||
                 kind == GroupKind::OrthogonalEvenPlus || kind == GroupKind::OrthogonalEvenMinus;
  }
  switch (prof.type) {
    case PlaceType::Inert:
      rq.order /= p + 1;
      rq.dim -= 1;
      rq.det_one_correction = "determinant one: order / (q+1), dim - 1";
      break;
    case PlaceType::Split:
      rq.order /= p - 1;
      rq.dim -= 1;
      rq.det_one_correction = "determinant one: order / (q-1), dim - 1";
      break;
    case PlaceType::Ramified:
      if (orthogonal) {
        rq.order /= 2;
        rq.det_one_correction = "determinant one: order / 2 (orthogonal factor present)";
      } else {
        rq.det_one_correction = "none (no orthogonal factor)";
      }
      break;
  }
  return rq;
}

// ---- local values ---------------------------------------------------------

LocalValue LocalValue::make(Rational coeff, long half_q_exp, long q) {
  long whole = half_q_exp >= 0 ? half_q_exp / 2 : -((-half_q_exp + 1) / 2);
  LocalValue v;
  v.coeff = coeff * arith::rpow(Rational(q), whole);
  v.half_q_exp = half_q_exp - 2 * whole;
  v.q = q;
  return v;
}

Rational LocalValue::to_rational() const {
  if (half_q_exp != 0) throw Error(Errc::RationalityViolation, "local value " + to_string() + " is irrational");
  return coeff;
}

LocalValue LocalValue::operator*(const LocalValue& o) const {
  if (half_q_exp && o.half_q_exp && q != o.q) throw Error(Errc::DomainError, "mixing q^{1/2} over different q");
  long qq = half_q_exp ? q : o.q;
  return make(coeff * o.coeff, half_q_exp + o.half_q_exp, qq);
}

LocalValue LocalValue::operator/(const LocalValue& o) const {
  if (half_q_exp && o.half_q_exp && q != o.q) throw Error(Errc::DomainError, "mixing q^{1/2} over different q");
  long qq = half_q_exp ? q : o.q;
  return make(coeff / o.coeff, half_q_exp - o.half_q_exp, qq);
}

Interval LocalValue::enclose(mpfr_prec_t bits) const {
  Interval r = Interval::from_rational(coeff, bits);
  if (half_q_exp) r = r * Interval::sqrt_of(Rational(q), bits);
  return r;
}

std::string LocalValue::to_string() const {
  std::string s = coeff.get_str();
  if (half_q_exp) s += "*" + std::to_string(q) + "^(1/2)";
  return s;
}

QuadSurd QuadSurd::from(const LocalValue& v) {
  QuadSurd s;
  s.q = v.q;
  (v.half_q_exp ? s.b : s.a) = v.coeff;
  return s;
}

QuadSurd QuadSurd::operator+(const QuadSurd& o) const {
  if (sgn(b) && sgn(o.b) && q != o.q) throw Error(Errc::DomainError, "mixing surds over different q");
  return {a + o.a, b + o.b, sgn(b) ? q : o.q};
}

QuadSurd QuadSurd::operator-(const QuadSurd& o) const {
  return *this + QuadSurd{-o.a, -o.b, o.q};
}

int QuadSurd::sign() const {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational lhs = a * a, rhs = b * b * q;
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

std::string QuadSurd::to_string() const {
  std::string s = a.get_str();
  if (sgn(b)) s += " + " + b.get_str() + "*" + std::to_string(q) + "^(1/2)";
  return s;
}

int compare(const LocalValue& x, const LocalValue& y) {
  return (QuadSurd::from(x) - QuadSurd::from(y)).sign();
}

namespace {

void check_n(const LocalProfile& prof, int n) {
  if (prof.rank() != n + 1)
    throw Error(Errc::DomainError, "profile rank " + std::to_string(prof.rank()) + " does not match n+1 = " +
                                       std::to_string(n + 1));
}

}  // namespace

LocalValue lambda_M(const LocalProfile& prof, int n) {
  check_n(prof, n);
  const ReductiveQuotient rq = reductive_quotient(prof, Target::Midpoint);
  const Integer q(prof.p);
  Integer prod = 1;
  long half = 0;
  switch (prof.type) {
    case PlaceType::Inert:
      for (int i = 2; i <= n + 1; ++i) prod *= ipow(q, i) - (i % 2 ? -1 : 1);
      half = rq.dim - n;
      break;
    case PlaceType::Split:
      for (int i = 2; i <= n + 1; ++i) prod *= ipow(q, i) - 1;
      half = rq.dim - n;
      break;
    case PlaceType::Ramified: {
      const int h = (n + 1) / 2;
      for (int i = 1; i <= h; ++i) prod *= ipow(q, 2 * i) - 1;
      half = rq.dim - h;
      break;
    }
  }
  return LocalValue::make(arith::ratio(prod, rq.order), half, prof.p);
}

long exponent_s(const LocalProfile& prof) {
  long s = 0;
  for (std::size_t a = 0; a < prof.jordan.size(); ++a)
    for (std::size_t b = a + 1; b < prof.jordan.size(); ++b) {
      long gap = prof.jordan[b].index - prof.jordan[a].index - 1;
      s += (gap / 2) * prof.jordan[a].rank * prof.jordan[b].rank;
    }
  return s;
}

Rational ind(const LocalProfile& prof) {
  const Integer gm = reductive_quotient(prof, Target::Midpoint).order;
  const Integer gl = reductive_quotient(prof, Target::Lattice).order;
  return arith::ratio(ipow(prof.q_E(), static_cast<unsigned long>(exponent_s(prof))) * gm, gl);
}

LocalValue lambda(const LocalProfile& prof, int n) {
  check_n(prof, n);
  bool first = true;
  LocalValue best;
  for (const auto& r : resolutions(prof)) {
    LocalValue v = lambda_M(r, n) * LocalValue::make(ind(r), 0, prof.p);
    if (first || compare(v, best) > 0) best = v;
    first = false;
  }
  return best;
}

LocalValue phi(const LocalProfile& prof, int n, int m) {
  check_n(prof, n);
  const int nm = prof.rank_at(m);
  if (nm == 0) throw Error(Errc::IndexNotRelevant, "index " + std::to_string(m) + " is not relevant");
  const long q = prof.p;
  const long shift = prof.N_v() + prof.i_rel_m(m);
  const Rational qr(q);
  switch (prof.type) {
    case PlaceType::Inert:
    case PlaceType::Split: {
      const Rational base = prof.type == PlaceType::Inert ? Rational(-q) : qr;
      Rational v = arith::rpow(qr, -shift) * (1 - arith::rpow(base, -nm)) / (1 - arith::rpow(base, -(n + 1)));
      return LocalValue::make(v, 0, q);
    }
    case PlaceType::Ramified: {
      const Rational tail = 1 + arith::rpow(qr, -(nm / 2));
      if (n % 2 == 0) return LocalValue::make(tail, -shift + n, q);
      return LocalValue::make(tail / (1 - arith::rpow(qr, -(n + 1))), -shift - (n + 1), q);
    }
  }
  return {};
}

QuadSurd phi_sum(const LocalProfile& prof, int n) {
  QuadSurd s{0, 0, prof.p};
  for (const auto& b : prof.jordan) s = s + QuadSurd::from(phi(prof, n, b.index));
  return s;
}

LocalValue phi_sum_bound(const LocalProfile& prof, int n) {
  check_n(prof, n);
  const long q = prof.p;
  const long N = prof.N_v();
  if (prof.type != PlaceType::Ramified) {
    if (N == 0) return LocalValue::make(1, 0, q);
    return LocalValue::make(Rational(16, 5) * arith::rpow(Rational(q), -N), 0, q);
  }
  const long base = n % 2 == 0 ? n : -(n + 1);
  if (N == 0) return LocalValue::make(2, base, q);
  return LocalValue::make(5, -N + base, q);
}

}  // namespace covol::local
