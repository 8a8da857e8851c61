#include "opshift/error.hpp"

namespace opshift {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegreeExceeded:
      return "DegreeExceeded";
    case ErrorCode::EmptyMeasure:
      return "EmptyMeasure";
    case ErrorCode::BadRadii:
      return "BadRadii";
    case ErrorCode::NegativeWeight:
      return "NegativeWeight";
    case ErrorCode::NonpositiveMass:
      return "NonpositiveMass";
    case ErrorCode::OutsideDomain:
      return "OutsideDomain";
    case ErrorCode::RankDeficient:
      return "RankDeficient";
    case ErrorCode::SingularShift:
      return "SingularShift";
    case ErrorCode::WindowExceeded:
      return "WindowExceeded";
    case ErrorCode::BadPath:
      return "BadPath";
    case ErrorCode::IndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorCode::InsufficientData:
      return "InsufficientData";
    case ErrorCode::InsufficientDepth:
      return "InsufficientDepth";
    case ErrorCode::ZeroLeadingCoefficient:
      return "ZeroLeadingCoefficient";
    case ErrorCode::DomainTooSmall:
      return "DomainTooSmall";
    case ErrorCode::DegenerateKappa:
      return "DegenerateKappa";
    case ErrorCode::CrossCheckFailed:
      return "CrossCheckFailed";
    case ErrorCode::NotDegenerate:
      return "NotDegenerate";
    case ErrorCode::PoleHit:
      return "PoleHit";
    case ErrorCode::EigenFailure:
      return "EigenFailure";
    case ErrorCode::BadPattern:
      return "BadPattern";
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::ConfigError:
      return "ConfigError";
  }
  return "Unknown";
}

}  // namespace opshift
