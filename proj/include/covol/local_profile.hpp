#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covol/hermitian.hpp"
#include "covol/numeric.hpp"

namespace covol::local {

using hermitian::HermitianLattice;
using hermitian::RingElem;

enum class PlaceType { Inert, Split, Ramified };
std::string_view to_string(PlaceType t);

PlaceType place_type(long D, long p);

/// Distinct prime divisors of |n| (n != 0), ascending.
std::vector<long> prime_divisors(const Integer& n);
/// Primes dividing D * det(L), ascending.
std::vector<long> relevant_primes(const HermitianLattice& L);

/// Root of x^2 - x + (1+D)/4 modulo p^K at a split prime.
Integer hensel_root(long D, long p, unsigned K);
long elem_valuation(const RingElem& x, long p, PlaceType type, long D);

/// Legendre symbol (a/p) for p odd; a must be prime to p.
int legendre(const Integer& a, long p);

struct JordanBlock {
  int index = 0;
  int rank = 0;
  /// Ramified even-index blocks only: Legendre symbol of the unit
  /// p^{-index*rank/2} * det of the block; 0 when unknown or not applicable.
  int disc = 0;
  bool operator==(const JordanBlock& o) const {
    return index == o.index && rank == o.rank && disc == o.disc;
  }
};

struct LocalProfile {
  long p = 0;
  PlaceType type = PlaceType::Inert;
  long D = 0;
  std::vector<JordanBlock> jordan;  // strictly increasing indices, ranks > 0

  long q() const { return p; }
  Integer q_E() const { return type == PlaceType::Ramified ? Integer(p) : Integer(p) * p; }
  int d() const { return type == PlaceType::Ramified ? 1 : 2; }
  int rank() const;
  int m_min() const { return jordan.front().index; }
  int m_max() const { return jordan.back().index; }
  int N_v() const { return m_max() - m_min(); }
  int i_rel() const { return static_cast<int>(jordan.size()); }
  /// |I_rel \ {m_min, m_max, m}|.
  int i_rel_m(int m) const;
  /// n_i (0 when i is not a Jordan index).
  int rank_at(int i) const;
  bool is_relevant(int i) const { return rank_at(i) > 0; }
  /// Some ramified even-index block has an unknown square class.
  bool ambiguous() const;
  std::vector<std::pair<int, int>> ranks() const;
};

/// Sorts and merges blocks, validates the data.  Blocks at ramified places
/// with odd index must have even rank.
LocalProfile make_profile(long D, long p, std::vector<JordanBlock> blocks);
/// All profiles obtained by fixing every unknown square class to +1 or -1.
std::vector<LocalProfile> resolutions(const LocalProfile& profile);

LocalProfile local_profile(const HermitianLattice& L, long p);
std::vector<std::pair<int, int>> jordan_ranks(const HermitianLattice& L, long p);

enum class GroupKind {
  Unitary,
  GeneralLinear,
  Symplectic,
  OrthogonalOdd,
  OrthogonalEvenPlus,
  OrthogonalEvenMinus,
};
std::string_view to_string(GroupKind k);

Integer group_order(GroupKind kind, int m, long q);
long group_dim(GroupKind kind, int m);

enum class Target { Lattice, Midpoint };

struct ReductiveQuotient {
  std::vector<std::pair<GroupKind, int>> blocks;
  std::string det_one_correction;
  long dim = 0;
  Integer order{1};
};

/// Reductive quotient of the stabiliser of L (or of its midpoint lattice M_L)
/// in the determinant-one model.  Throws DomainError on an ambiguous profile.
ReductiveQuotient reductive_quotient(const LocalProfile& profile, Target target);

/// coeff * q^(half_q_exp/2), kept with half_q_exp in {0, 1}.
struct LocalValue {
  Rational coeff{1};
  long half_q_exp = 0;
  long q = 1;

  static LocalValue make(Rational coeff, long half_q_exp, long q);
  bool is_rational() const { return half_q_exp == 0; }
  Rational to_rational() const;
  LocalValue operator*(const LocalValue& o) const;
  LocalValue operator/(const LocalValue& o) const;
  bool operator==(const LocalValue& o) const {
    return coeff == o.coeff && half_q_exp == o.half_q_exp && (half_q_exp == 0 || q == o.q);
  }
  Interval enclose(mpfr_prec_t bits) const;
  std::string to_string() const;
};

/// Exact sign of a + b*sqrt(q) arithmetic, enough to add LocalValues at one q.
struct QuadSurd {
  Rational a{0}, b{0};
  long q = 1;
  static QuadSurd from(const LocalValue& v);
  QuadSurd operator+(const QuadSurd& o) const;
  QuadSurd operator-(const QuadSurd& o) const;
  int sign() const;
  std::string to_string() const;
};

/// Exact comparison (-1, 0, +1) of two LocalValues over the same q.
int compare(const LocalValue& x, const LocalValue& y);

LocalValue lambda_M(const LocalProfile& profile, int n);
long exponent_s(const LocalProfile& profile);
Rational ind(const LocalProfile& profile);
/// lambda(M_L) * Ind(L); on an ambiguous profile the largest candidate.
LocalValue lambda(const LocalProfile& profile, int n);

LocalValue phi(const LocalProfile& profile, int n, int m);
LocalValue phi_sum_bound(const LocalProfile& profile, int n);
QuadSurd phi_sum(const LocalProfile& profile, int n);

}  // namespace covol::local
