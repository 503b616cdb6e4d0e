#include "ddflow/error.hpp"

namespace ddflow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kImagResidue: return "ImagResidue";
    case ErrorKind::kNegativeCoeff: return "NegativeCoeff";
    case ErrorKind::kSizeMismatch: return "SizeMismatch";
    case ErrorKind::kTimeOutOfBracket: return "TimeOutOfBracket";
    case ErrorKind::kInvalidParams: return "InvalidParams";
    case ErrorKind::kCflViolation: return "CflViolation";
    case ErrorKind::kFixedPointDiverged: return "FixedPointDiverged";
    case ErrorKind::kPositivityLost: return "PositivityLost";
    case ErrorKind::kBoundViolation: return "BoundViolation";
    case ErrorKind::kNumericalBlowup: return "NumericalBlowup";
    case ErrorKind::kNegativeArgument: return "NegativeArgument";
    case ErrorKind::kSinkFailure: return "SinkFailure";
    case ErrorKind::kUnknownPreset: return "UnknownPreset";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kValidationError: return "ValidationError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace ddflow
