#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "covol/exact_arith.hpp"
#include "covol/hermitian.hpp"
#include "covol/local_profile.hpp"

namespace covol::volume {

struct TraceFactor {
  std::string name;
  arith::AlgebraicValue value;
};

struct CovolumeResult {
  long D = 0;
  int n = 0;
  arith::AlgebraicValue exact;
  Rational value;     // exact folded to a rational
  Real numeric{128};  // 30-digit mirror
  std::map<long, local::LocalValue> local_factors;
  std::map<long, local::LocalProfile> profiles;
  int center_order = 1;  // multiplier already applied to `value` (1 for the bare covolume)
  std::vector<TraceFactor> formula_trace;
};

/// The closed formula for given local data.  Works for any n >= 1 so that
/// small cases can be checked against classical volumes; su_covolume adds the
/// signature requirement n > 2.
CovolumeResult assemble_covolume(long D, int n, const std::vector<local::LocalProfile>& profiles);

CovolumeResult su_covolume(const hermitian::HermitianLattice& L);

int center_order(const hermitian::HermitianLattice& L);
int su_center_order(const hermitian::HermitianLattice& L);

CovolumeResult hm_volume_su(const hermitian::HermitianLattice& L);
/// cov <= vol_HM(U(L)) <= |Z| * cov.
std::pair<CovolumeResult, CovolumeResult> hm_bounds_U(const hermitian::HermitianLattice& L);

}  // namespace covol::volume
