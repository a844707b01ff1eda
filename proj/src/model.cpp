#include "cancoord/model.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <unordered_map>

namespace cancoord {

namespace {

std::string fmt_num(double v) {
  std::string s = std::to_string(v);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

void validate(const ParameterSpec& spec) {
  const auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidParameter, "parameter '" + spec.name + "': " + why, spec.name);
  };
  if (spec.name.empty()) fail("empty name");
  if (!std::isfinite(spec.default_value) || !std::isfinite(spec.min) ||
      !std::isfinite(spec.max) || !std::isfinite(spec.step)) {
    fail("non-finite value");
  }
  if (spec.min > spec.max) fail("min > max");
  if (spec.default_value < spec.min || spec.default_value > spec.max) {
    fail("default " + fmt_num(spec.default_value) + " outside [" + fmt_num(spec.min) + ", " +
         fmt_num(spec.max) + "]");
  }
  if (!(spec.step > 0.0)) fail("step must be positive");
  if (spec.max > spec.min && spec.step > spec.max - spec.min) fail("step exceeds range");
}

std::string_view to_string(Direction d) {
  return d == Direction::Maximize ? "maximize" : "minimize";
}

std::optional<Direction> parse_direction(std::string_view s) {
  if (s == "maximize") return Direction::Maximize;
  if (s == "minimize") return Direction::Minimize;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Configuration

double Configuration::at(std::string_view name) const {
  auto it = values_.find(name);
  if (it == values_.end()) {
    throw Error(ErrorCode::UnknownName, "no value for '" + std::string(name) + "'",
                std::string(name));
  }
  return it->second;
}

Configuration Configuration::with(std::string_view name, double value) const {
  Configuration out = *this;
  auto it = out.values_.find(name);
  if (it == out.values_.end()) {
    out.values_.emplace(std::string(name), value);
  } else {
    it->second = value;
  }
  return out;
}

// ---------------------------------------------------------------------------
// DependencyGraph

DependencyGraph::DependencyGraph(std::vector<std::string> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool DependencyGraph::has_node(std::string_view n) const {
  return std::find(nodes_.begin(), nodes_.end(), n) != nodes_.end();
}

bool DependencyGraph::has_edge(std::string_view from, std::string_view to) const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.from == from && e.to == to; });
}

std::vector<std::string> DependencyGraph::successors(std::string_view node) const {
  std::vector<std::string> out;
  for (const auto& e : edges_) {
    if (e.from == node) out.push_back(e.to);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scenario

const ParameterSpec* Scenario::find_parameter(std::string_view name) const {
  for (const auto& p : parameters_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const ParameterSpec& Scenario::parameter(std::string_view name) const {
  if (const auto* p = find_parameter(name)) return *p;
  throw Error(ErrorCode::UnknownName, "unknown parameter '" + std::string(name) + "'",
              std::string(name));
}

bool Scenario::is_objective(std::string_view name) const {
  return objective_index(name).has_value();
}

std::optional<std::size_t> Scenario::objective_index(std::string_view objective) const {
  for (std::size_t i = 0; i < objectives_.size(); ++i) {
    if (objectives_[i].name == objective) return i;
  }
  return std::nullopt;
}

const FunctionSpec* Scenario::find_function(std::string_view id) const {
  for (const auto& f : functions_) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

const FunctionSpec* Scenario::owner_of(std::string_view objective) const {
  for (const auto& f : functions_) {
    if (f.objective.name == objective) return &f;
  }
  return nullptr;
}

Configuration Scenario::defaults() const {
  Configuration::Values v;
  for (const auto& p : parameters_) v.emplace(p.name, p.default_value);
  return Configuration(std::move(v));
}

void Scenario::validate(const Configuration& config) const {
  for (const auto& p : parameters_) {
    if (!config.contains(p.name)) {
      throw Error(ErrorCode::InvalidConfiguration, "missing value for parameter '" + p.name + "'",
                  p.name);
    }
    const double v = config.at(p.name);
    if (!(v >= p.min && v <= p.max)) {
      throw Error(ErrorCode::InvalidConfiguration,
                  "value " + fmt_num(v) + " for '" + p.name + "' outside [" + fmt_num(p.min) +
                      ", " + fmt_num(p.max) + "]",
                  p.name);
    }
  }
  if (config.size() != parameters_.size()) {
    for (const auto& [name, _] : config.values()) {
      if (!is_parameter(name)) {
        throw Error(ErrorCode::InvalidConfiguration, "'" + name + "' is not a parameter", name);
      }
    }
  }
}

std::vector<double> Scenario::evaluate_raw(const Configuration& config) const {
  validate(config);
  std::vector<double> params;
  params.reserve(parameters_.size());
  for (const auto& p : parameters_) params.push_back(config.at(p.name));

  std::vector<double> out(functions_.size(), 0.0);
  std::vector<double> args;
  for (std::size_t fi : order_) {
    args.clear();
    for (const auto& ref : input_refs_[fi]) {
      args.push_back(ref.is_parameter ? params[ref.index] : out[ref.index]);
    }
    const auto& id = functions_[fi].id;
    double value = 0.0;
    try {
      value = evaluators_[fi](args);
    } catch (const Error& e) {
      throw Error(ErrorCode::EvaluatorFailure, "function '" + id + "': " + e.what(), id);
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::EvaluatorFailure,
                  "function '" + id + "' produced a non-finite value", id);
    }
    out[fi] = value;
  }
  return out;
}

Scenario build_scenario(std::vector<ParameterSpec> params, std::vector<FunctionSpec> functions,
                        const EvaluatorRegistry& registry) {
  if (functions.empty()) {
    throw Error(ErrorCode::InvalidScenario, "scenario needs at least one function", "/functions");
  }

  std::unordered_map<std::string, std::size_t> param_index;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto loc = "/parameters/" + std::to_string(i);
    try {
      validate(params[i]);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidParameter, e.message(), loc);
    }
    if (!param_index.emplace(params[i].name, i).second) {
      throw Error(ErrorCode::DuplicateName, "duplicate parameter '" + params[i].name + "'",
                  loc + "/name");
    }
  }

  std::unordered_map<std::string, std::size_t> objective_owner;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const auto& f = functions[i];
    const auto loc = "/functions/" + std::to_string(i);
    if (f.id.empty()) throw Error(ErrorCode::InvalidScenario, "empty function id", loc + "/id");
    if (!ids.insert(f.id).second) {
      throw Error(ErrorCode::DuplicateName, "duplicate function id '" + f.id + "'", loc + "/id");
    }
    if (f.objective.name.empty()) {
      throw Error(ErrorCode::InvalidScenario, "empty objective name", loc + "/objective");
    }
    if (param_index.count(f.objective.name)) {
      throw Error(ErrorCode::DuplicateName,
                  "objective '" + f.objective.name + "' collides with a parameter name",
                  loc + "/objective");
    }
    if (!objective_owner.emplace(f.objective.name, i).second) {
      throw Error(ErrorCode::DuplicateObjectiveOwner,
                  "objective '" + f.objective.name + "' is owned by both '" +
                      functions[objective_owner[f.objective.name]].id + "' and '" + f.id + "'",
                  loc + "/objective");
    }
  }

  Scenario s;
  s.input_refs_.resize(functions.size());
  std::vector<Edge> edges;
  // adjacency over functions: dep -> dependents
  std::vector<std::vector<std::size_t>> dependents(functions.size());
  std::vector<std::size_t> indegree(functions.size(), 0);

  for (std::size_t i = 0; i < functions.size(); ++i) {
    const auto& f = functions[i];
    const auto loc = "/functions/" + std::to_string(i);
    std::set<std::string> seen;
    for (std::size_t k = 0; k < f.inputs.size(); ++k) {
      const auto& in = f.inputs[k];
      const auto in_loc = loc + "/inputs/" + std::to_string(k);
      if (!seen.insert(in).second) {
        throw Error(ErrorCode::DuplicateName, "input '" + in + "' listed twice", in_loc);
      }
      if (auto p = param_index.find(in); p != param_index.end()) {
        s.input_refs_[i].push_back({true, p->second});
      } else if (auto o = objective_owner.find(in); o != objective_owner.end()) {
        if (o->second == i) {
          throw Error(ErrorCode::CyclicDependency,
                      "function '" + f.id + "' reads its own objective '" + in + "'", in_loc);
        }
        s.input_refs_[i].push_back({false, o->second});
        dependents[o->second].push_back(i);
        ++indegree[i];
      } else {
        throw Error(ErrorCode::UnknownInput, "input '" + in + "' of function '" + f.id +
                                                 "' is neither a parameter nor an objective",
                    in_loc);
      }
      edges.push_back({in, f.objective.name});
    }
    for (std::size_t k = 0; k < f.outputs.size(); ++k) {
      if (!param_index.count(f.outputs[k])) {
        throw Error(ErrorCode::UnknownInput,
                    "output '" + f.outputs[k] + "' of function '" + f.id + "' is not a parameter",
                    loc + "/outputs/" + std::to_string(k));
      }
    }
  }

  // Kahn's algorithm; the ready set is ordered by declaration index so the
  // order is a pure function of the input.
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  while (!ready.empty()) {
    const std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    s.order_.push_back(i);
    for (std::size_t d : dependents[i]) {
      if (--indegree[d] == 0) ready.insert(d);
    }
  }
  if (s.order_.size() != functions.size()) {
    std::string members;
    for (std::size_t i = 0; i < functions.size(); ++i) {
      if (indegree[i] > 0) members += (members.empty() ? "" : ", ") + functions[i].id;
    }
    throw Error(ErrorCode::CyclicDependency, "objective cycle among functions: " + members,
                "/functions");
  }

  for (std::size_t i = 0; i < functions.size(); ++i) {
    try {
      s.evaluators_.push_back(registry.make(functions[i].evaluator, functions[i].inputs.size()));
    } catch (const Error& e) {
      throw Error(e.code(), e.message(), "/functions/" + std::to_string(i) + "/evaluator");
    }
  }

  std::vector<std::string> nodes;
  for (const auto& p : params) nodes.push_back(p.name);
  for (const auto& f : functions) {
    nodes.push_back(f.objective.name);
    s.objectives_.push_back(f.objective);
  }
  s.graph_ = DependencyGraph(std::move(nodes), std::move(edges));
  s.parameters_ = std::move(params);
  s.functions_ = std::move(functions);
  return s;
}

ObjectiveValues evaluate(const Scenario& scenario, const Configuration& config) {
  const auto raw = scenario.evaluate_raw(config);
  ObjectiveValues out;
  for (std::size_t i = 0; i < raw.size(); ++i) out.emplace(scenario.objectives()[i].name, raw[i]);
  return out;
}

std::vector<double> utilities(const Scenario& scenario, const Configuration& config) {
  auto raw = scenario.evaluate_raw(config);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (scenario.objectives()[i].direction == Direction::Minimize) raw[i] = -raw[i];
  }
  return raw;
}

std::vector<SweepRow> sweep(const Scenario& scenario, std::string_view param,
                            std::span<const double> values, const Configuration& base) {
  scenario.parameter(param);
  scenario.validate(base);
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    rows.push_back({v, evaluate(scenario, base.with(param, v))});
  }
  return rows;
}

std::vector<double> parameter_grid(const ParameterSpec& spec) {
  validate(spec);
  std::vector<double> grid;
  if (spec.max == spec.min) return {spec.min};
  // Points are min + k*step (not accumulated) so the grid does not drift.
  const double span = spec.max - spec.min;
  const double eps = 1e-9 * spec.step;
  const auto n = static_cast<std::size_t>(std::floor((span + eps) / spec.step));
  grid.reserve(n + 2);
  for (std::size_t k = 0; k <= n; ++k) {
    double v = spec.min + static_cast<double>(k) * spec.step;
    if (v > spec.max || std::abs(v - spec.max) <= eps) v = spec.max;
    if (!grid.empty() && v <= grid.back()) continue;
    grid.push_back(v);
  }
  if (grid.back() < spec.max) grid.push_back(spec.max);
  return grid;
}

}  // namespace cancoord
