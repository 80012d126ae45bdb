#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covol/numeric.hpp"

namespace covol::hermitian {

/// E = Q(sqrt(-D)) with odd discriminant -D; omega = (1 + sqrt(-D))/2.
class ImagQuadField {
 public:
  long D() const { return D_; }
  /// omega^2 = omega - c with c = (1 + D)/4.
  long c() const { return (1 + D_) / 4; }
  bool operator==(const ImagQuadField& o) const { return D_ == o.D_; }

 private:
  explicit ImagQuadField(long D) : D_(D) {}
  long D_;
  friend ImagQuadField make_field(long D);
};

/// Throws EVEN_DISCRIMINANT when D != 3 mod 4 (the unimodular shortcut would
/// still apply for even D != 4, but nothing else here does) and NOT_SQUAREFREE.
ImagQuadField make_field(long D);

/// a + b*omega in O_E.
struct RingElem {
  Integer a{0}, b{0};

  RingElem() = default;
  RingElem(Integer a_, Integer b_) : a(std::move(a_)), b(std::move(b_)) {}
  RingElem(long a_) : a(a_), b(0) {}  // NOLINT: integers embed

  RingElem conj() const { return {a + b, -b}; }
  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const RingElem& o) const { return a == o.a && b == o.b; }
};

Integer norm(const RingElem& x, const ImagQuadField& F);
RingElem mul(const RingElem& x, const RingElem& y, const ImagQuadField& F);

/// a + b*omega in E with rational coordinates; used by exact elimination.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(Rational a, Rational b, long c) : a_(std::move(a)), b_(std::move(b)), c_(c) {}
  FieldElem(const RingElem& x, long c) : a_(x.a), b_(x.b), c_(c) {}

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long c() const { return c_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  FieldElem conj() const { return {a_ + b_, -b_, c_}; }
  Rational norm() const { return a_ * a_ + a_ * b_ + c_ * b_ * b_; }
  FieldElem inverse() const;

  FieldElem operator+(const FieldElem& o) const { return {a_ + o.a_, b_ + o.b_, c_}; }
  FieldElem operator-(const FieldElem& o) const { return {a_ - o.a_, b_ - o.b_, c_}; }
  FieldElem operator-() const { return {-a_, -b_, c_}; }
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }

 private:
  Rational a_{0}, b_{0};
  long c_ = 0;
};

using GramMatrix = std::vector<std::vector<RingElem>>;

/// Gram matrix over O_E.  The constructor enforces the Hermitian symmetry and
/// integral diagonal; non-degeneracy is checked by parse_lattice and by the
/// operations that need it.
class HermitianLattice {
 public:
  HermitianLattice(ImagQuadField field, GramMatrix gram);

  const ImagQuadField& field() const { return field_; }
  long D() const { return field_.D(); }
  std::size_t rank() const { return gram_.size(); }
  const GramMatrix& gram() const { return gram_; }
  const RingElem& at(std::size_t i, std::size_t j) const { return gram_[i][j]; }
  bool operator==(const HermitianLattice& o) const {
    return field_ == o.field_ && gram_ == o.gram_;
  }

 private:
  ImagQuadField field_;
  GramMatrix gram_;
};

Integer det_gram(const HermitianLattice& L);
/// (#positive, #negative) eigenvalues.
std::pair<int, int> signature(const HermitianLattice& L);
HermitianLattice direct_sum(const HermitianLattice& A, const HermitianLattice& B);
HermitianLattice rescale(const HermitianLattice& L, const Integer& c);
bool is_unimodular(const HermitianLattice& L);

/// Coefficients c_0..c_n of det(x I - G), all rational integers.
std::vector<Integer> characteristic_polynomial(const HermitianLattice& L);

/// U^* G U for an integral change of basis U (rows of U^T are new vectors).
HermitianLattice change_basis(const HermitianLattice& L, const GramMatrix& U);

HermitianLattice diagonal(const ImagQuadField& F, const std::vector<long>& entries);
HermitianLattice hyperbolic_plane(const ImagQuadField& F);
/// [[0,3],[3,0]].
HermitianLattice lattice_G(const ImagQuadField& F);

HermitianLattice parse_lattice(std::string_view text);
std::string serialize_lattice(const HermitianLattice& L);

}  // namespace covol::hermitian
