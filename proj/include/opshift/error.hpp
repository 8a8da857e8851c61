#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opshift {

using cplx = std::complex<double>;

enum class ErrorCode {
  DegreeExceeded,
  EmptyMeasure,
  BadRadii,
  NegativeWeight,
  NonpositiveMass,
  OutsideDomain,
  RankDeficient,
  SingularShift,
  WindowExceeded,
  BadPath,
  IndexOutOfRange,
  InsufficientData,
  InsufficientDepth,
  ZeroLeadingCoefficient,
  DomainTooSmall,
  DegenerateKappa,
  CrossCheckFailed,
  NotDegenerate,
  PoleHit,
  EigenFailure,
  BadPattern,
  InvalidArgument,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-readable code; the CLI maps codes to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opshift
