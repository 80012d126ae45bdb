#include "covol/hermitian.hpp"

#include <json.hpp>

#include "covol/error.hpp"
#include "covol/exact_arith.hpp"

namespace covol::hermitian {

ImagQuadField make_field(long D) {
  if (D <= 0) throw Error(Errc::DomainError, "D must be positive");
  if (D % 4 != 3)
    throw Error(Errc::EvenDiscriminant,
                "D = " + std::to_string(D) + " is not 3 mod 4 (even discriminant)");
  if (!arith::is_valid_discriminant(D))
    throw Error(Errc::NotSquarefree, "D = " + std::to_string(D) + " is not squarefree");
  return ImagQuadField(D);
}

Integer norm(const RingElem& x, const ImagQuadField& F) {
  return x.a * x.a + x.a * x.b + F.c() * x.b * x.b;
}

RingElem mul(const RingElem& x, const RingElem& y, const ImagQuadField& F) {
  return {x.a * y.a - F.c() * x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  return {a_ * o.a_ - c_ * b_ * o.b_, a_ * o.b_ + b_ * o.a_ + b_ * o.b_, c_};
}

FieldElem FieldElem::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw Error(Errc::DomainError, "inverse of zero");
  FieldElem cj = conj();
  return {cj.a_ / n, cj.b_ / n, c_};
}

HermitianLattice::HermitianLattice(ImagQuadField field, GramMatrix gram)
    : field_(field), gram_(std::move(gram)) {
  const std::size_t n = gram_.size();
  if (n == 0) throw Error(Errc::InvariantViolation, "empty Gram matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i].size() != n) throw Error(Errc::InvariantViolation, "Gram matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (gram_[i][i].b != 0)
      throw Error(Errc::InvariantViolation,
                  "diagonal entry " + std::to_string(i) + " is not a rational integer");
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(gram_[i][j] == gram_[j][i].conj()))
        throw Error(Errc::InvariantViolation, "gram[" + std::to_string(i) + "][" +
                                                  std::to_string(j) + "] is not the conjugate of gram[" +
                                                  std::to_string(j) + "][" + std::to_string(i) + "]");
  }
}

namespace {

using FMatrix = std::vector<std::vector<FieldElem>>;

FMatrix to_field(const HermitianLattice& L) {
  const long c = L.field().c();
  FMatrix m(L.rank());
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t j = 0; j < L.rank(); ++j) m[i].emplace_back(L.at(i, j), c);
  return m;
}

Integer rational_integer(const FieldElem& x, const char* what) {
  if (sgn(x.b()) != 0 || x.a().get_den() != 1)
    throw Error(Errc::InvariantViolation, std::string(what) + " is not a rational integer");
  return x.a().get_num();
}

}  // namespace

Integer det_gram(const HermitianLattice& L) {
  FMatrix m = to_field(L);
  const std::size_t n = m.size();
  const long c = L.field().c();
  FieldElem det(Rational(1), Rational(0), c);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det = det * m[k][k];
    FieldElem inv = m[k][k].inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      FieldElem f = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] = m[i][j] - f * m[k][j];
    }
  }
  return rational_integer(det, "determinant");
}

static FMatrix multiply(const FMatrix& X, const FMatrix& Y, const FieldElem& zero) {
  const std::size_t n = X.size();
  FMatrix Z(n, std::vector<FieldElem>(n, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      if (X[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!Y[l][j].is_zero()) Z[i][j] = Z[i][j] + X[i][l] * Y[l][j];
    }
  return Z;
}

std::vector<Integer> characteristic_polynomial(const HermitianLattice& L) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  const FMatrix A = to_field(L);
  const std::size_t n = A.size();
  const long c = L.field().c();
  const FieldElem zero(Rational(0), Rational(0), c);
  std::vector<FieldElem> coeff(n + 1, zero);
  coeff[n] = FieldElem(Rational(1), Rational(0), c);
  FMatrix AM(n, std::vector<FieldElem>(n, zero));  // A * M_{k-1}
  for (std::size_t k = 1; k <= n; ++k) {
    FMatrix M = AM;
    for (std::size_t i = 0; i < n; ++i) M[i][i] = M[i][i] + coeff[n - k + 1];
    AM = multiply(A, M, zero);
    FieldElem tr = zero;
    for (std::size_t i = 0; i < n; ++i) tr = tr + AM[i][i];
    coeff[n - k] = FieldElem(-tr.a() / Rational(k), -tr.b() / Rational(k), c);
  }
  std::vector<Integer> out;
  for (auto& x : coeff) out.push_back(rational_integer(x, "characteristic polynomial coefficient"));
  return out;
}

std::pair<int, int> signature(const HermitianLattice& L) {
  // All eigenvalues are real, so Descartes' rule of signs counts exactly.
  std::vector<Integer> cp = characteristic_polynomial(L);
  if (cp[0] == 0) throw Error(Errc::Degenerate, "Gram matrix is singular");
  auto changes = [&](bool flip) {
    int count = 0, last = 0;
    for (std::size_t i = cp.size(); i-- > 0;) {
      int s = sgn(cp[i]);
      if (flip && (i % 2)) s = -s;
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return {changes(false), changes(true)};
}

HermitianLattice direct_sum(const HermitianLattice& A, const HermitianLattice& B) {
  if (!(A.field() == B.field())) throw Error(Errc::FieldMismatch, "direct sum over different fields");
  const std::size_t n = A.rank() + B.rank();
  GramMatrix g(n, std::vector<RingElem>(n));
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t j = 0; j < A.rank(); ++j) g[i][j] = A.at(i, j);
  for (std::size_t i = 0; i < B.rank(); ++i)
    for (std::size_t j = 0; j < B.rank(); ++j) g[A.rank() + i][A.rank() + j] = B.at(i, j);
  return {A.field(), g};
}

HermitianLattice rescale(const HermitianLattice& L, const Integer& c) {
  if (c == 0) throw Error(Errc::DomainError, "rescale by zero");
  GramMatrix g = L.gram();
  for (auto& row : g)
    for (auto& x : row) x = {x.a * c, x.b * c};
  return {L.field(), g};
}

bool is_unimodular(const HermitianLattice& L) { return abs(det_gram(L)) == 1; }

HermitianLattice change_basis(const HermitianLattice& L, const GramMatrix& U) {
  const std::size_t n = L.rank();
  const auto& F = L.field();
  if (U.size() != n) throw Error(Errc::DomainError, "change of basis has the wrong size");
  GramMatrix g(n, std::vector<RingElem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RingElem s;
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          RingElem t = mul(mul(U[i][k], L.at(k, l), F), U[j][l].conj(), F);
          s = {s.a + t.a, s.b + t.b};
        }
      g[i][j] = s;
    }
  return {F, g};
}

HermitianLattice diagonal(const ImagQuadField& F, const std::vector<long>& entries) {
  const std::size_t n = entries.size();
  GramMatrix g(n, std::vector<RingElem>(n));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = RingElem(entries[i]);
  return {F, g};
}

HermitianLattice hyperbolic_plane(const ImagQuadField& F) {
  return {F, {{RingElem(0), RingElem(1)}, {RingElem(1), RingElem(0)}}};
}

HermitianLattice lattice_G(const ImagQuadField& F) {
  return {F, {{RingElem(0), RingElem(3)}, {RingElem(3), RingElem(0)}}};
}

namespace {

using nlohmann::json;

Integer parse_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(std::to_string(v.get<unsigned long long>()));
    return Integer(std::to_string(v.get<long long>()));
  }
  if (v.is_string()) {
    Integer r;
    if (r.set_str(v.get<std::string>(), 10) == 0) return r;
  }
  throw Error(Errc::ParseError, where + ": expected an integer");
}

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

}  // namespace

HermitianLattice parse_lattice(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::ParseError, "top level: expected an object");
  if (!doc.contains("D")) throw Error(Errc::ParseError, "missing field \"D\"");
  if (!doc.contains("gram")) throw Error(Errc::ParseError, "missing field \"gram\"");
  Integer Dz = parse_integer(doc["D"], "D");
  if (!Dz.fits_slong_p()) throw Error(Errc::InvariantViolation, "D is out of range");
  ImagQuadField F = [&] {
    try {
      return make_field(Dz.get_si());
    } catch (const Error& e) {
      throw Error(Errc::InvariantViolation, std::string("field: ") + e.what());
    }
  }();
  const json& rows = doc["gram"];
  if (!rows.is_array() || rows.empty()) throw Error(Errc::ParseError, "gram: expected a non-empty array");
  GramMatrix g;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string ri = "gram[" + std::to_string(i) + "]";
    if (!rows[i].is_array()) throw Error(Errc::ParseError, ri + ": expected an array");
    if (rows[i].size() != rows.size())
      throw Error(Errc::InvariantViolation, ri + ": matrix is not square");
    std::vector<RingElem> row;
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const std::string rij = ri + "[" + std::to_string(j) + "]";
      const json& e = rows[i][j];
      if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, rij + ": expected [a, b]");
      row.emplace_back(parse_integer(e[0], rij + "[0]"), parse_integer(e[1], rij + "[1]"));
    }
    g.push_back(std::move(row));
  }
  HermitianLattice L(F, std::move(g));
  if (det_gram(L) == 0) throw Error(Errc::InvariantViolation, "form is degenerate (det = 0)");
  return L;
}

std::string serialize_lattice(const HermitianLattice& L) {
  json rows = json::array();
  for (const auto& r : L.gram()) {
    json row = json::array();
    for (const auto& x : r) row.push_back(json::array({integer_json(x.a), integer_json(x.b)}));
    rows.push_back(row);
  }
  json doc = {{"D", L.D()}, {"gram", rows}};
  return doc.dump();
}

}  // namespace covol::hermitian
