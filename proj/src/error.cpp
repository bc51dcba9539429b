#include "triesat/error.hpp"

namespace triesat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedHeader: return "MalformedHeader";
    case ErrorKind::ClauseArity: return "ClauseArity";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::EmptyFormula: return "EmptyFormula";
    case ErrorKind::PartialAssignment: return "PartialAssignment";
    case ErrorKind::ExplicitOrderContradictsFrequency: return "ExplicitOrderContradictsFrequency";
    case ErrorKind::IncompleteExplicitOrder: return "IncompleteExplicitOrder";
    case ErrorKind::UnknownVariableName: return "UnknownVariableName";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnmappedPosition: return "UnmappedPosition";
    case ErrorKind::NotADuplicate: return "NotADuplicate";
    case ErrorKind::AnchorNotOnPath: return "AnchorNotOnPath";
    case ErrorKind::DegenerateSubsets: return "DegenerateSubsets";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::TooManyVariables: return "TooManyVariables";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::ExpectationFailed: return "ExpectationFailed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace triesat
