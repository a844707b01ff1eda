#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cancoord {

enum class ErrorCode {
  InvalidParameter,
  InvalidScenario,
  DuplicateName,
  UnknownInput,
  CyclicDependency,
  DuplicateObjectiveOwner,
  UnknownEvaluator,
  InvalidEvaluatorArgs,
  InvalidConfiguration,
  EvaluatorFailure,
  ZeroWidth,
  NonFiniteInput,
  UnknownName,
  SchemaError,
  NotA1Conflict,
  DegenerateGrid,
  AllBelowDisagreement,
  GridTooLarge,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library. `location()` is a JSON-pointer-like
/// path ("/functions/1/inputs/0") or a function id, empty when not applicable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string location = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::string location_;
};

}  // namespace cancoord
