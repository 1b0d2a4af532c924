#ifndef THETALAB_ERROR_HPP
#define THETALAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace thetalab {

enum class ErrorCode {
  kGenusMismatch,
  kDenominator,
  kGuardExceeded,
  kIndexOutOfRange,
  kNotSymmetric,
  kNotPositiveDefinite,
  kRadiusOverflow,
  kBranchPoints,
  kQuadrature,
  kOddSubset,
  kVanishingCharacteristic,
  kConstraint,
  kEmptyAdmissibleSet,
  kWitness,
  kUnsupportedCase,
  kParse,
};

std::string_view error_code_name(ErrorCode code);

// Every failure the library reports carries one of the codes above so the
// CLI can map it onto a stable diagnostic.
class ThetaError : public std::runtime_error {
 public:
  ThetaError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thetalab

#endif
