#pragma once
// Machine-readable and text renderings of a deformation report.

#include "g2d/dirac.hpp"
#include "g2d/verify.hpp"

#include <json.hpp>

namespace g2d {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json field_json(const FieldElement& x);          // {"1": "2/3", "i*sqrt2": "-1"}
nlohmann::json weight_json(const Weight& w);
nlohmann::json multiset_json(const SpaceData& sd, const IrrepMultiset& m, bool of_g);

// Keys are emitted in sorted order and candidates in canonical order, so equal reports
// serialize to identical bytes.  Timing is included only on request.
nlohmann::json report_json(const DeformationReport& r, bool with_timing = false);
std::string report_text(const DeformationReport& r, bool with_timing = false);
// One row of the final table: "sp(2) ⊕ sp(1) ⊕ V^{(0,1)}_ℝ", or "0".
std::string deformation_row(const SpaceData& sd, const IrrepMultiset& m);

nlohmann::json checks_json(const std::vector<CheckResult>& checks);
std::string checks_text(const std::vector<CheckResult>& checks);

}  // namespace g2d
