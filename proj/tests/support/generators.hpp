#pragma once

// Deterministic random inputs for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "covol/hermitian.hpp"
#include "covol/local_profile.hpp"

namespace gen {

using covol::hermitian::GramMatrix;
using covol::hermitian::HermitianLattice;
using covol::hermitian::ImagQuadField;
using covol::hermitian::RingElem;
using Rng = std::mt19937_64;

inline const std::vector<long> kDiscriminants{3, 7, 11, 15, 19, 23, 31, 35};

long pick(Rng& rng, const std::vector<long>& xs);
long uniform(Rng& rng, long lo, long hi);
RingElem random_elem(Rng& rng, long bound);

/// Non-degenerate Hermitian Gram matrix with entries in [-bound, bound].
HermitianLattice random_lattice(Rng& rng, const ImagQuadField& F, int rank, long bound);
/// Product of elementary matrices, swaps and -1 scalings (det a unit).
GramMatrix random_unimodular(Rng& rng, const ImagQuadField& F, int rank, int steps);
/// Signature (1, n), assembled from diagonal, H, G, sqrt(-D)-modular and
/// negative definite binary pieces, then scrambled by a unimodular change of
/// basis when scramble is set.
HermitianLattice random_signature_1n(Rng& rng, const ImagQuadField& F, int n, bool scramble = true);
/// [[0, pi], [conj(pi), 0]] with pi = -1 + 2 omega, a generator of sqrt(-D).
HermitianLattice pi_modular_plane(const ImagQuadField& F);

/// D (from kDiscriminants) at which p has the requested behaviour.
long discriminant_for(Rng& rng, long p, covol::local::PlaceType type);

/// L = L' (+) <e> with <e, e> = +-p^m * unit.  `m` is the Jordan index of e at
/// p (2 * exponent at ramified places).
struct SplitExtension {
  HermitianLattice L;
  HermitianLattice complement;
  long p = 0;
  int m = 0;
};
SplitExtension random_split_extension(Rng& rng, long p, covol::local::PlaceType type, int max_rank);

}  // namespace gen
