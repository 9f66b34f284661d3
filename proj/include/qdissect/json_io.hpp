#pragma once

#include <json.hpp>

#include "qdissect/congruence.hpp"
#include "qdissect/dissect.hpp"
#include "qdissect/dsl.hpp"
#include "qdissect/oracle.hpp"
#include "qdissect/series.hpp"

namespace qdissect {

/// {"ring": "exact" | {"mod": m}, "coeffs": ["c0", "c1", ...]}
/// Coefficients travel as decimal strings so exact big values round-trip
/// bit-exactly.
nlohmann::json series_to_json(const Series& s);
Series series_from_json(const nlohmann::json& j);

nlohmann::json count_table_to_json(const oracle::CountTable& t);

nlohmann::json verify_result_to_json(const dissect::IdentityRecord& record,
                                     const dissect::VerifyResult& result, int order);

nlohmann::json family_report_to_json(const congruence::FamilyReport& report);

nlohmann::json script_report_to_json(const dsl::Report& report);

}  // namespace qdissect
