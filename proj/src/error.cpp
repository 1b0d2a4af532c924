#include "thetalab/error.hpp"

namespace thetalab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kGenusMismatch: return "genus_mismatch";
    case ErrorCode::kDenominator: return "denominator";
    case ErrorCode::kGuardExceeded: return "guard_exceeded";
    case ErrorCode::kIndexOutOfRange: return "index_out_of_range";
    case ErrorCode::kNotSymmetric: return "not_symmetric";
    case ErrorCode::kNotPositiveDefinite: return "not_positive_definite";
    case ErrorCode::kRadiusOverflow: return "radius_overflow";
    case ErrorCode::kBranchPoints: return "branch_points";
    case ErrorCode::kQuadrature: return "quadrature";
    case ErrorCode::kOddSubset: return "odd_subset";
    case ErrorCode::kVanishingCharacteristic: return "vanishing_characteristic";
    case ErrorCode::kConstraint: return "constraint";
    case ErrorCode::kEmptyAdmissibleSet: return "empty_admissible_set";
    case ErrorCode::kWitness: return "witness";
    case ErrorCode::kUnsupportedCase: return "unsupported_case";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

}  // namespace thetalab
