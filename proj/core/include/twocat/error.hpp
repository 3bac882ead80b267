#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace twocat {

enum class ErrorCode {
  // finite categories, functors, transformations
  MissingComposite,
  NonAssociative,
  UnitLaw,
  BadEndpoints,
  DuplicateIdentifier,
  NotFunctorial,
  NotNatural,
  NotIso,
  UnknownObject,
  // searches over filtered categories
  NotFiltered,
  SearchExhausted,
  // set diagrams
  ShapeMismatch,
  // pseudofunctors
  IncoherentUnit,
  IncoherentAssoc,
  NotIsoCell,
  IncompatibleCells,
  // 2-colimits and 2-limits
  BadRepresentative,
  NotACocone,
  NotACone,
  NonWellDefined,
  // text format
  SyntaxError,
  UnresolvedReference,
  ElaborationDiverges,
  // anything that should be impossible for validated input
  InternalInvariant,
};

const char* to_string(ErrorCode code) noexcept;

/// Process exit status the command-line driver reports for an error code:
/// 2 for rejected input, 3 for an internal invariant breach.
int exit_status(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> witness = {});

  ErrorCode code() const noexcept { return code_; }
  /// what() without the code prefix.
  const std::string& message() const noexcept { return message_; }
  /// Names of the offending objects/morphisms, in the order the check saw them.
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::vector<std::string> witness_;
};

}  // namespace twocat
