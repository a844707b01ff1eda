#pragma once

// Scenario file format:
//
// {
//   "parameters": [ {"name": "p1", "default": 4, "min": 0, "max": 10, "step": 1}, ... ],
//   "functions": [
//     {
//       "id": "F1",
//       "inputs": ["p1", "p2"],
//       "objective": "o1",
//       "direction": "maximize",          // optional, default maximize
//       "quantity": "throughput",         // optional
//       "outputs": ["p3"],                // optional, actuated parameters
//       "evaluator": {"kind": "gaussian_param_width", "args": {"center": 0}}
//     }, ...
//   ]
// }
//
// Structural problems raise Error(SchemaError) and semantic ones the
// build_scenario codes; both carry a JSON pointer in location().

#include <filesystem>

#include <json.hpp>

#include "cancoord/model.hpp"

namespace cancoord {

Scenario scenario_from_json(const nlohmann::json& doc,
                            const EvaluatorRegistry& registry = EvaluatorRegistry::builtin());

/// Throws ScenarioIoError when the file cannot be read, Error(SchemaError)
/// when it is not valid JSON or does not match the schema.
Scenario load_scenario(const std::filesystem::path& path,
                       const EvaluatorRegistry& registry = EvaluatorRegistry::builtin());

nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const ParameterSpec& spec);
nlohmann::json to_json(const FunctionSpec& spec);
nlohmann::json to_json(const Configuration& config);

/// Error raised when a scenario file cannot be opened.
class ScenarioIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cancoord
