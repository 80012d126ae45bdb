#pragma once

// JSON rendering of results.  Objects use nlohmann's default (sorted) map so
// output is byte-stable; exact rationals are strings.

#include <json.hpp>
#include <string>

#include "covol/covolume.hpp"
#include "covol/freeness.hpp"

namespace covol::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCodeVersion = "covol-1.0.0";

json profile_json(const local::LocalProfile& p);
json covolume_json(const volume::CovolumeResult& r, unsigned digits);
json volume_report(const hermitian::HermitianLattice& L, unsigned digits);
json criterion_report(const freeness::CriterionReport& r, unsigned digits);
json slope_report(const freeness::SlopeReport& r, unsigned digits);
json threshold_report(const freeness::ThresholdReport& r, unsigned digits);
json exceptions_report(long D_max, const Integer& N_max, const std::vector<freeness::ExceptionRange>& ranges);
json cubic_report(const freeness::CubicReport& r, unsigned digits);

/// "json" (one document), "csv" (path,value rows) or "text" (path: value).
std::string render(const json& doc, const std::string& format);

}  // namespace covol::report
