#include "twocat/error.hpp"

namespace twocat {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MissingComposite: return "MissingComposite";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::UnitLaw: return "UnitLaw";
    case ErrorCode::BadEndpoints: return "BadEndpoints";
    case ErrorCode::DuplicateIdentifier: return "DuplicateIdentifier";
    case ErrorCode::NotFunctorial: return "NotFunctorial";
    case ErrorCode::NotNatural: return "NotNatural";
    case ErrorCode::NotIso: return "NotIso";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::NotFiltered: return "NotFiltered";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IncoherentUnit: return "IncoherentUnit";
    case ErrorCode::IncoherentAssoc: return "IncoherentAssoc";
    case ErrorCode::NotIsoCell: return "NotIsoCell";
    case ErrorCode::IncompatibleCells: return "IncompatibleCells";
    case ErrorCode::BadRepresentative: return "BadRepresentative";
    case ErrorCode::NotACocone: return "NotACocone";
    case ErrorCode::NotACone: return "NotACone";
    case ErrorCode::NonWellDefined: return "NonWellDefined";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::ElaborationDiverges: return "ElaborationDiverges";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SearchExhausted:
    case ErrorCode::NonWellDefined:
    case ErrorCode::InternalInvariant:
      return 3;
    default:
      return 2;
  }
}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::string> witness)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message),
      witness_(std::move(witness)) {}

}  // namespace twocat
