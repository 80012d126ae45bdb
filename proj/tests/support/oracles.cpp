#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace oracle {

namespace {

// F_p or F_{p^2} = F_p[t], t^2 = t + 1 (p = 2) or t^2 = r (r a non-residue).
// Element x + y t is encoded as x + p y.
struct FiniteField {
  long p = 2;
  int deg = 1;
  int size = 2;
  std::vector<int> add_t, mul_t, neg_t, frob_t;

  FiniteField(long p_, int deg_) : p(p_), deg(deg_), size(deg_ == 1 ? int(p_) : int(p_ * p_)) {
    long r = 0;
    if (deg == 2 && p != 2) {
      for (long a = 2; a < p; ++a) {
        bool square = false;
        for (long x = 1; x < p; ++x)
          if (x * x % p == a) square = true;
        if (!square) { r = a; break; }
      }
    }
    add_t.resize(size * size);
    mul_t.resize(size * size);
    neg_t.resize(size);
    for (int u = 0; u < size; ++u) {
      const long ux = u % p, uy = u / p;
      neg_t[u] = int((p - ux) % p + p * ((p - uy) % p));
      for (int v = 0; v < size; ++v) {
        const long vx = v % p, vy = v / p;
        add_t[u * size + v] = int((ux + vx) % p + p * ((uy + vy) % p));
        long x = ux * vx, y = ux * vy + uy * vx;
        const long yy = uy * vy;
        if (deg == 2) {
          if (p == 2) { x += yy; y += yy; }
          else x += yy * r;
        }
        mul_t[u * size + v] = int(x % p + p * (y % p));
      }
    }
    frob_t.resize(size);
    for (int u = 0; u < size; ++u) {
      int acc = 1;
      for (long i = 0; i < p; ++i) acc = mul(acc, u);
      frob_t[u] = deg == 1 ? u : acc;
    }
  }
  int add(int u, int v) const { return add_t[u * size + v]; }
  int mul(int u, int v) const { return mul_t[u * size + v]; }
  int sub(int u, int v) const { return add(u, neg_t[v]); }
  int conj(int u) const { return frob_t[u]; }
};

using Vec = std::vector<int>;

std::vector<Vec> all_vectors(const FiniteField& F, int m) {
  std::vector<Vec> out;
  long total = 1;
  for (int i = 0; i < m; ++i) total *= F.size;
  out.reserve(total);
  for (long idx = 0; idx < total; ++idx) {
    Vec v(m);
    long t = idx;
    for (int i = 0; i < m; ++i) { v[i] = int(t % F.size); t /= F.size; }
    out.push_back(v);
  }
  return out;
}

int det_mod(std::vector<Vec> a, long p) {
  const int n = int(a.size());
  long det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a[r][c] % p) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != c) { std::swap(a[piv], a[c]); det = (p - det) % p; }
    det = det * a[c][c] % p;
    long inv = 1;
    for (long e = p - 2, b = a[c][c]; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (int r = c + 1; r < n; ++r) {
      const long f = a[r][c] * inv % p;
      for (int k = c; k < n; ++k) a[r][k] = int(((a[r][k] - f * a[c][k]) % p + p) % p);
    }
  }
  return int(det);
}

// Counts tuples (v_1..v_m) with B(v_i, v_j) = target[i][j].  For a
// non-degenerate target these are exactly the isometries (columns = images of
// the standard basis).
std::uint64_t count_isometries(const FiniteField& F, int m, const std::function<int(const Vec&, const Vec&)>& B,
                               const std::vector<Vec>& target, const std::function<bool(const std::vector<Vec>&)>& leaf) {
  const auto vecs = all_vectors(F, m);
  std::vector<Vec> chosen;
  std::uint64_t count = 0;
  std::function<void(int)> rec = [&](int j) {
    if (j == m) {
      if (!leaf || leaf(chosen)) ++count;
      return;
    }
    for (const auto& v : vecs) {
      if (B(v, v) != target[j][j]) continue;
      bool ok = true;
      for (int i = 0; i < j && ok; ++i) ok = B(chosen[i], v) == target[i][j];
      if (!ok) continue;
      chosen.push_back(v);
      rec(j + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return count;
}

std::vector<Vec> identity(int m) {
  std::vector<Vec> t(m, Vec(m, 0));
  for (int i = 0; i < m; ++i) t[i][i] = 1;
  return t;
}

}  // namespace

std::uint64_t count_gl(int m, long p) {
  FiniteField F(p, 1);
  long total = 1;
  for (int i = 0; i < m * m; ++i) total *= p;
  std::uint64_t count = 0;
  std::vector<Vec> a(m, Vec(m));
  for (long idx = 0; idx < total; ++idx) {
    long t = idx;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) { a[i][j] = int(t % p); t /= p; }
    if (det_mod(a, p)) ++count;
  }
  return count;
}

std::uint64_t count_unitary(int m, long p) {
  FiniteField F(p, 2);
  auto B = [&](const Vec& v, const Vec& w) {
    int s = 0;
    for (int i = 0; i < m; ++i) s = F.add(s, F.mul(v[i], F.conj(w[i])));
    return s;
  };
  return count_isometries(F, m, B, identity(m), nullptr);
}

std::uint64_t count_symplectic(int m, long p) {
  FiniteField F(p, 1);
  auto B = [&](const Vec& v, const Vec& w) {
    int s = 0;
    for (int i = 0; i + 1 < m; i += 2)
      s = F.add(s, F.sub(F.mul(v[i], w[i + 1]), F.mul(v[i + 1], w[i])));
    return s;
  };
  std::vector<Vec> J(m, Vec(m, 0));
  for (int i = 0; i + 1 < m; i += 2) { J[i][i + 1] = 1; J[i + 1][i] = int(p - 1); }
  return count_isometries(F, m, B, J, nullptr);
}

std::uint64_t count_orthogonal(int m, long p, long u, bool det_one) {
  FiniteField F(p, 1);
  Vec d(m, 1);
  d[m - 1] = int(((u % p) + p) % p);
  auto B = [&](const Vec& v, const Vec& w) {
    int s = 0;
    for (int i = 0; i < m; ++i) s = F.add(s, F.mul(d[i], F.mul(v[i], w[i])));
    return s;
  };
  std::vector<Vec> target(m, Vec(m, 0));
  for (int i = 0; i < m; ++i) target[i][i] = d[i];
  std::function<bool(const std::vector<Vec>&)> leaf;
  if (det_one) leaf = [&](const std::vector<Vec>& cols) { return det_mod(cols, p) == 1; };
  return count_isometries(F, m, B, target, leaf);
}

bool split_form(int m, long p, long u) {
  FiniteField F(p, 1);
  Vec d(m, 1);
  d[m - 1] = int(((u % p) + p) % p);
  auto B = [&](const Vec& v, const Vec& w) {
    int s = 0;
    for (int i = 0; i < m; ++i) s = F.add(s, F.mul(d[i], F.mul(v[i], w[i])));
    return s;
  };
  std::vector<Vec> iso;
  for (const auto& v : all_vectors(F, m))
    if (std::any_of(v.begin(), v.end(), [](int x) { return x != 0; }) && B(v, v) == 0) iso.push_back(v);
  std::vector<Vec> chosen;
  std::function<bool()> rec = [&]() {
    if (int(chosen.size()) == m / 2) return true;
    for (const auto& v : iso) {
      bool ok = true;
      for (const auto& w : chosen) ok = ok && B(v, w) == 0;
      if (!ok) continue;
      chosen.push_back(v);
      // v must not lie in the span of the earlier vectors
      bool independent = true;
      if (chosen.size() > 1) {
        const int k = int(chosen.size()) - 1;
        long combos = 1;
        for (int i = 0; i < k; ++i) combos *= p;
        for (long idx = 0; idx < combos && independent; ++idx) {
          Vec s(m, 0);
          long t = idx;
          for (int i = 0; i < k; ++i) {
            const int c = int(t % p);
            t /= p;
            for (int j = 0; j < m; ++j) s[j] = F.add(s[j], F.mul(c, chosen[i][j]));
          }
          if (s == v) independent = false;
        }
      }
      if (independent && rec()) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec();
}

// --- special values ----------------------------------------------------------

Enclosure zeta_series(unsigned k) {
  if (k < 2) throw std::invalid_argument("zeta_series needs k >= 2");
  const long M = k == 2 ? 2000000 : k <= 4 ? 200000 : 2000;
  long double s = 0;
  for (long n = M; n >= 1; --n) s += std::pow(static_cast<long double>(n), -static_cast<long double>(k));
  const long double lo = std::pow(static_cast<long double>(M + 1), 1.0L - k) / (k - 1);
  const long double hi = std::pow(static_cast<long double>(M), 1.0L - k) / (k - 1);
  return {s + (lo + hi) / 2, (hi - lo) / 2 + 1e-15L};
}

namespace {

int jacobi(long a, long n) {
  a %= n;
  if (a < 0) a += n;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

}  // namespace

Enclosure dirichlet_series(long D, unsigned k) {
  const long M = k == 1 ? 100000 : 2000;
  std::vector<int> chi(D + 1);
  for (long a = 1; a <= D; ++a) chi[a] = jacobi(a, D);
  auto inv_pow = [k](long double x) {
    long double r = 1;
    for (unsigned i = 0; i < k; ++i) r /= x;
    return r;
  };
  long double s = 0;
  for (long j = M - 1; j >= 0; --j) {
    long double block = 0;
    for (long a = 1; a <= D; ++a)
      if (chi[a]) block += chi[a] * inv_pow(static_cast<long double>(j * D + a));
    s += block;
  }
  long double tail = 0;
  for (long a = 1; a <= D; ++a) {
    if (!chi[a]) continue;
    const long double x = static_cast<long double>(M * D + a);
    const long double integral = k == 1 ? -std::log(x) / D : std::pow(x, 1.0L - k) / (D * (k - 1.0L));
    const long double g = std::pow(x, -static_cast<long double>(k));
    const long double dg = -static_cast<long double>(k) * D * std::pow(x, -static_cast<long double>(k) - 1);
    tail += chi[a] * (integral + g / 2 - dg / 12);
  }
  const long double x = static_cast<long double>(M * D);
  const long double rem = D * static_cast<long double>(k) * (k + 1) * D * D * std::pow(x, -static_cast<long double>(k) - 2);
  return {s + tail, rem + 1e-12L};
}

// --- Jordan ranks from determinantal divisors ---------------------------------

namespace {

using covol::Integer;
using covol::hermitian::RingElem;

struct Ring {
  long c;
  RingElem mul(const RingElem& x, const RingElem& y) const {
    return {x.a * y.a - Integer(c) * x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
  }
};

RingElem det_perm(const std::vector<std::vector<RingElem>>& m, const Ring& R) {
  const int n = int(m.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  RingElem total(0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    RingElem prod(1);
    for (int i = 0; i < n; ++i) prod = R.mul(prod, m[i][perm[i]]);
    if (inversions % 2) total = {total.a - prod.a, total.b - prod.b};
    else total = {total.a + prod.a, total.b + prod.b};
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

long vp(Integer x, long p, long cap) {
  if (x == 0) return cap;
  long v = 0;
  while (x % p == 0) { x /= p; ++v; }
  return v;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (int(cur.size()) == k) { out.push_back(cur); return; }
    for (int i = start; i < n; ++i) { cur.push_back(i); rec(i + 1); cur.pop_back(); }
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> jordan_ranks_by_minors(const covol::hermitian::HermitianLattice& L, long p) {
  const long D = L.D();
  const Ring R{(1 + D) / 4};
  const int n = int(L.rank());
  constexpr long kCap = 200;
  const bool ramified = D % p == 0;
  bool split = false;
  Integer root = 0, pk = 1;
  if (!ramified) {
    const long c = (1 + D) / 4;
    long r0 = -1;
    for (long x = 0; x < p; ++x)
      if (((x * x - x + c) % p + p) % p == 0) { r0 = x; break; }
    split = r0 >= 0;
    if (split) {
      // digit-by-digit lift of a root of x^2 - x + c
      root = r0;
      pk = p;
      for (int k = 1; k < kCap; ++k) {
        const Integer next = pk * p;
        for (long t = 0; t < p; ++t) {
          const Integer cand = root + t * pk;
          Integer f = cand * cand - cand + c;
          f %= next;
          if (f == 0) { root = cand; break; }
        }
        pk = next;
      }
    }
  }
  auto val = [&](const RingElem& x) -> long {
    if (ramified) {
      const Integer N = x.a * x.a + x.a * x.b + Integer(R.c) * x.b * x.b;
      return vp(N, p, kCap);
    }
    if (split) {
      Integer y = x.a + x.b * root;
      y %= pk;
      return vp(y, p, kCap);
    }
    return std::min(vp(x.a, p, kCap), vp(x.b, p, kCap));
  };
  std::vector<long> d(n + 1, 0);
  for (int k = 1; k <= n; ++k) {
    long best = kCap;
    const auto subs = subsets(n, k);
    for (const auto& rows : subs)
      for (const auto& cols : subs) {
        std::vector<std::vector<RingElem>> m(k, std::vector<RingElem>(k));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) m[i][j] = L.at(rows[i], cols[j]);
        best = std::min(best, val(det_perm(m, R)));
      }
    d[k] = best;
  }
  std::map<int, int> counts;
  for (int k = 1; k <= n; ++k) counts[int(d[k] - d[k - 1])]++;
  return {counts.begin(), counts.end()};
}

covol::Rational unramified_ratio_closed_form(const covol::local::LocalProfile& L, int m, int n) {
  using covol::Rational;
  const long q = L.p;
  const long sigma = L.type == covol::local::PlaceType::Inert ? -q : q;
  auto power = [](Rational b, long e) {
    Rational r = 1;
    for (long i = 0; i < std::abs(e); ++i) r *= b;
    return e < 0 ? 1 / r : r;
  };
  long ds = 0, same_parity = 0;
  for (const auto& b : L.jordan) {
    if (b.index < m) ds += (m - b.index - 1) / 2 * b.rank;
    if (b.index > m) ds += (b.index - m - 1) / 2 * b.rank;
    if ((b.index - m) % 2 == 0) same_parity += b.rank;
  }
  ds *= 2;
  const long nm = L.rank_at(m);
  return power(q, -ds) * power(q, -(n + 1 + same_parity - 2 * nm)) * (1 - power(sigma, -nm)) /
         (1 - power(sigma, -(n + 1)));
}

std::uint64_t anisotropic_lines(long q) {
  FiniteField F(q, 2);
  auto norm = [&](int x) { return F.mul(x, F.conj(x)); };
  std::uint64_t count = norm(1) != 0 ? 1 : 0;  // the line through (0, 1)
  for (int y = 0; y < F.size; ++y)
    if (F.add(norm(1), norm(y)) != 0) ++count;  // lines through (1, y)
  return count;
}

}  // namespace oracle
