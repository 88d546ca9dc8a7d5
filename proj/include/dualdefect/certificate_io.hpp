#pragma once

// JSON and text renderings of certificates, oracle results and reports.

#include <string>
#include <string_view>

#include "dualdefect/json_int.hpp"
#include "dualdefect/structure.hpp"

namespace dualdefect {

// Field order: n, r, c, delta, grouping, pi1, pi2, p, seed, bound, trials,
// oracle_delta, checks.  oracle_delta is the string "EmptyDual" when L = 0.
json_int::Json certificate_to_json(const StructureCertificate& cert);
// Fibers are not part of the format and are left empty.
StructureCertificate certificate_from_json(const json_int::Json& j);
StructureCertificate parse_certificate(std::string_view text);
std::string certificate_to_text(const StructureCertificate& cert);

json_int::Json defect_to_json(const DefectResult& d, const PointConfig& a, const SamplingPolicy& policy);
std::string defect_to_text(const DefectResult& d, const PointConfig& a, const SamplingPolicy& policy);

json_int::Json report_to_json(const VerificationReport& rep);
std::string report_to_text(const VerificationReport& rep);

}  // namespace dualdefect
