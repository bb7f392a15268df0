#include "wonderful/error.hpp"

namespace wonderful {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::UnsupportedTower: return "UnsupportedTower";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::NotHyperplane: return "NotHyperplane";
    case ErrorCode::NotFlagPreserving: return "NotFlagPreserving";
    case ErrorCode::DegreeNotZero: return "DegreeNotZero";
    case ErrorCode::EqualFlags: return "EqualFlags";
    case ErrorCode::NotABasis: return "NotABasis";
    case ErrorCode::WitnessNotFound: return "WitnessNotFound";
    case ErrorCode::NotCollinearityPreserving: return "NotCollinearityPreserving";
    case ErrorCode::NotRealizable: return "NotRealizable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace wonderful
