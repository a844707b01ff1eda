#include "cancoord/error.hpp"

namespace cancoord {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnknownInput: return "UnknownInput";
    case ErrorCode::CyclicDependency: return "CyclicDependency";
    case ErrorCode::DuplicateObjectiveOwner: return "DuplicateObjectiveOwner";
    case ErrorCode::UnknownEvaluator: return "UnknownEvaluator";
    case ErrorCode::InvalidEvaluatorArgs: return "InvalidEvaluatorArgs";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::EvaluatorFailure: return "EvaluatorFailure";
    case ErrorCode::ZeroWidth: return "ZeroWidth";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::NotA1Conflict: return "NotA1Conflict";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::AllBelowDisagreement: return "AllBelowDisagreement";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {
std::string compose(ErrorCode code, const std::string& message, const std::string& location) {
  std::string out(to_string(code));
  if (!location.empty()) out += " at " + location;
  out += ": " + message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::string location)
    : std::runtime_error(compose(code, message, location)),
      code_(code),
      message_(message),
      location_(std::move(location)) {}

}  // namespace cancoord
