#pragma once

// Declarative model of tunable parameters, cognitive functions and the
// composed system, plus deterministic evaluation of every objective.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cancoord/error.hpp"

namespace cancoord {

struct ParameterSpec {
  std::string name;
  double default_value = 0.0;
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  bool operator==(const ParameterSpec&) const = default;
};

/// Throws Error(InvalidParameter) unless min <= default <= max, step > 0 and,
/// for a non-degenerate range, step <= max - min.
void validate(const ParameterSpec& spec);

enum class Direction { Maximize, Minimize };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

struct ObjectiveSpec {
  std::string name;
  Direction direction = Direction::Maximize;
  /// Optional label of the underlying quantity this objective measures. Two
  /// objectives over the same quantity with opposing directions are a direct
  /// characteristic conflict.
  std::string quantity;

  bool operator==(const ObjectiveSpec&) const = default;
};

using EvaluatorArgs = std::map<std::string, double>;
using EvaluatorFn = std::function<double(std::span<const double>)>;

struct EvaluatorSpec {
  std::string kind;
  EvaluatorArgs args;

  bool operator==(const EvaluatorSpec&) const = default;
};

struct FunctionSpec {
  std::string id;
  std::vector<std::string> inputs;
  ObjectiveSpec objective;
  /// Parameters this function actuates, beyond those it reads. Usually empty.
  std::vector<std::string> outputs;
  EvaluatorSpec evaluator;

  bool operator==(const FunctionSpec&) const = default;
};

/// Maps evaluator kinds to factories. Every kind accepts an optional `scale`
/// argument that multiplies the evaluator output.
class EvaluatorRegistry {
 public:
  using Factory = std::function<EvaluatorFn(const EvaluatorArgs& args, std::size_t arity)>;

  /// Registry holding the built-in kinds: gaussian_param_width,
  /// gaussian_objective_width, linear, constant.
  static const EvaluatorRegistry& builtin();

  void register_kind(std::string kind, Factory factory);
  bool contains(std::string_view kind) const;
  std::vector<std::string> kinds() const;

  /// Throws UnknownEvaluator or InvalidEvaluatorArgs.
  EvaluatorFn make(const EvaluatorSpec& spec, std::size_t arity) const;

 private:
  std::map<std::string, Factory, std::less<>> factories_;
};

/// Assignment of a value to every parameter of a scenario.
class Configuration {
 public:
  using Values = std::map<std::string, double, std::less<>>;

  Configuration() = default;
  explicit Configuration(Values values) : values_(std::move(values)) {}

  double at(std::string_view name) const;
  bool contains(std::string_view name) const { return values_.find(name) != values_.end(); }
  Configuration with(std::string_view name, double value) const;
  const Values& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  bool operator==(const Configuration&) const = default;

 private:
  Values values_;
};

struct Edge {
  std::string from;
  std::string to;

  auto operator<=>(const Edge&) const = default;
};

/// Nodes are parameters and objectives; u -> v iff u is an input of the
/// function owning objective v. Derived from the function specs only.
class DependencyGraph {
 public:
  DependencyGraph() = default;
  DependencyGraph(std::vector<std::string> nodes, std::vector<Edge> edges);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  /// Sorted, duplicate free.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool has_node(std::string_view n) const;
  bool has_edge(std::string_view from, std::string_view to) const;
  /// Sorted successor names.
  std::vector<std::string> successors(std::string_view node) const;

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
};

class Scenario {
 public:
  const std::vector<ParameterSpec>& parameters() const noexcept { return parameters_; }
  /// One per function, in function declaration order.
  const std::vector<ObjectiveSpec>& objectives() const noexcept { return objectives_; }
  const std::vector<FunctionSpec>& functions() const noexcept { return functions_; }
  const DependencyGraph& graph() const noexcept { return graph_; }
  /// Function indices in a topological order fixed at build time.
  const std::vector<std::size_t>& evaluation_order() const noexcept { return order_; }

  const ParameterSpec* find_parameter(std::string_view name) const;
  const ParameterSpec& parameter(std::string_view name) const;
  bool is_parameter(std::string_view name) const { return find_parameter(name) != nullptr; }
  bool is_objective(std::string_view name) const;
  const FunctionSpec* find_function(std::string_view id) const;
  const FunctionSpec* owner_of(std::string_view objective) const;
  std::optional<std::size_t> objective_index(std::string_view objective) const;

  Configuration defaults() const;
  /// Throws InvalidConfiguration unless `config` covers exactly the scenario
  /// parameters with in-bounds values.
  void validate(const Configuration& config) const;

  /// Raw objective values in objectives() order.
  std::vector<double> evaluate_raw(const Configuration& config) const;

 private:
  friend Scenario build_scenario(std::vector<ParameterSpec>, std::vector<FunctionSpec>,
                                 const EvaluatorRegistry&);

  struct InputRef {
    bool is_parameter;
    std::size_t index;
  };

  Scenario() = default;

  std::vector<ParameterSpec> parameters_;
  std::vector<ObjectiveSpec> objectives_;
  std::vector<FunctionSpec> functions_;
  DependencyGraph graph_;
  std::vector<std::size_t> order_;
  std::vector<EvaluatorFn> evaluators_;
  std::vector<std::vector<InputRef>> input_refs_;
};

/// Validates names, resolves evaluators and derives the dependency graph.
/// Errors: UnknownInput, CyclicDependency, DuplicateObjectiveOwner,
/// DuplicateName, InvalidParameter, InvalidScenario, UnknownEvaluator.
Scenario build_scenario(std::vector<ParameterSpec> params, std::vector<FunctionSpec> functions,
                        const EvaluatorRegistry& registry = EvaluatorRegistry::builtin());

using ObjectiveValues = std::map<std::string, double, std::less<>>;

ObjectiveValues evaluate(const Scenario& scenario, const Configuration& config);

/// Direction-normalized objective values (minimized objectives negated), in
/// objectives() order.
std::vector<double> utilities(const Scenario& scenario, const Configuration& config);

struct SweepRow {
  double value;
  ObjectiveValues objectives;
};

std::vector<SweepRow> sweep(const Scenario& scenario, std::string_view param,
                            std::span<const double> values, const Configuration& base);

/// Uniform grid min, min+step, ... up to max inclusive; max is appended when
/// the step does not land on it.
std::vector<double> parameter_grid(const ParameterSpec& spec);

}  // namespace cancoord
