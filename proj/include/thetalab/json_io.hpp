#ifndef THETALAB_JSON_IO_HPP
#define THETALAB_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "thetalab/characteristic.hpp"
#include "thetalab/genus3.hpp"
#include "thetalab/hyperelliptic.hpp"
#include "thetalab/identities.hpp"
#include "thetalab/theta.hpp"

namespace thetalab {

using Json = nlohmann::ordered_json;

/// x rounded to 15 significant digits.
double round15(double x);
/// "re+imi" with 15 significant digits per part.
std::string format_complex(Complex z);
Json complex_to_json(Complex z);

Json to_json(const Characteristic& c);
Characteristic characteristic_from_json(const Json& j);
/// Accepts the object form or the compact "t/b" string.
HalfChar half_char_from_json(const Json& j);

Json tau_to_json(const CMatrix& tau);
/// Raw entries; validation is left to validate_period_matrix.
CMatrix tau_from_json(const Json& j);

Json curve_to_json(const BranchSet& branch);
BranchSet curve_from_json(const Json& j);

Json to_json(const ThomaeReport& r);
Json to_json(const Identity& id);
Json to_json(const IdentityResidual& r);
Json to_json(const CaseResult& r);
CaseResult case_result_from_json(const Json& j);
Json to_json(const DetectionReport& r);
DetectionReport detection_report_from_json(const Json& j);

/// Parses JSON text, mapping syntax errors to kParse.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

}  // namespace thetalab

#endif
