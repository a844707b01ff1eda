#include "cancoord/scenario_json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cancoord {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaError, what, where.empty() ? "/" : where);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing required field '") + key + "'");
  return *it;
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> known,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) schema_error(where + "/" + key, "unknown field '" + key + "'");
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where, "expected a number");
  return v.get<double>();
}

std::string identifier(const json& v, const std::string& where) {
  if (!v.is_string()) schema_error(where, "expected a string");
  auto s = v.get<std::string>();
  if (s.empty()) schema_error(where, "identifier must not be empty");
  return s;
}

std::vector<std::string> identifier_list(const json& v, const std::string& where) {
  if (!v.is_array()) schema_error(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(identifier(v[i], where + "/" + std::to_string(i)));
  }
  return out;
}

ParameterSpec parse_parameter(const json& v, const std::string& where) {
  if (!v.is_object()) schema_error(where, "expected an object");
  reject_unknown_keys(v, {"name", "default", "min", "max", "step"}, where);
  ParameterSpec p;
  p.name = identifier(require(v, "name", where), where + "/name");
  p.default_value = number(require(v, "default", where), where + "/default");
  p.min = number(require(v, "min", where), where + "/min");
  p.max = number(require(v, "max", where), where + "/max");
  p.step = number(require(v, "step", where), where + "/step");
  return p;
}

FunctionSpec parse_function(const json& v, const std::string& where) {
  if (!v.is_object()) schema_error(where, "expected an object");
  reject_unknown_keys(v, {"id", "inputs", "objective", "direction", "quantity", "outputs",
                          "evaluator"},
                      where);
  FunctionSpec f;
  f.id = identifier(require(v, "id", where), where + "/id");
  f.inputs = identifier_list(require(v, "inputs", where), where + "/inputs");
  f.objective.name = identifier(require(v, "objective", where), where + "/objective");
  if (auto it = v.find("direction"); it != v.end()) {
    if (!it->is_string()) schema_error(where + "/direction", "expected a string");
    auto d = parse_direction(it->get<std::string>());
    if (!d) schema_error(where + "/direction", "expected 'maximize' or 'minimize'");
    f.objective.direction = *d;
  }
  if (auto it = v.find("quantity"); it != v.end()) {
    f.objective.quantity = identifier(*it, where + "/quantity");
  }
  if (auto it = v.find("outputs"); it != v.end()) {
    f.outputs = identifier_list(*it, where + "/outputs");
  }
  const auto ev_where = where + "/evaluator";
  const json& ev = require(v, "evaluator", where);
  if (!ev.is_object()) schema_error(ev_where, "expected an object");
  reject_unknown_keys(ev, {"kind", "args"}, ev_where);
  f.evaluator.kind = identifier(require(ev, "kind", ev_where), ev_where + "/kind");
  if (auto it = ev.find("args"); it != ev.end()) {
    if (!it->is_object()) schema_error(ev_where + "/args", "expected an object");
    for (const auto& [key, val] : it->items()) {
      f.evaluator.args[key] = number(val, ev_where + "/args/" + key);
    }
  }
  return f;
}

}  // namespace

Scenario scenario_from_json(const json& doc, const EvaluatorRegistry& registry) {
  if (!doc.is_object()) schema_error("", "scenario must be a JSON object");
  reject_unknown_keys(doc, {"parameters", "functions", "description"}, "");

  const json& params = require(doc, "parameters", "");
  if (!params.is_array()) schema_error("/parameters", "expected an array");
  std::vector<ParameterSpec> ps;
  for (std::size_t i = 0; i < params.size(); ++i) {
    ps.push_back(parse_parameter(params[i], "/parameters/" + std::to_string(i)));
  }

  const json& funcs = require(doc, "functions", "");
  if (!funcs.is_array()) schema_error("/functions", "expected an array");
  if (funcs.empty()) schema_error("/functions", "at least one function is required");
  std::vector<FunctionSpec> fs;
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    fs.push_back(parse_function(funcs[i], "/functions/" + std::to_string(i)));
  }
  return build_scenario(std::move(ps), std::move(fs), registry);
}

Scenario load_scenario(const std::filesystem::path& path, const EvaluatorRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw ScenarioIoError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ScenarioIoError("cannot read scenario file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    schema_error("", std::string("invalid JSON: ") + e.what());
  }
  return scenario_from_json(doc, registry);
}

json to_json(const ParameterSpec& spec) {
  return json{{"name", spec.name},
              {"default", spec.default_value},
              {"min", spec.min},
              {"max", spec.max},
              {"step", spec.step}};
}

json to_json(const FunctionSpec& spec) {
  json f{{"id", spec.id},
         {"inputs", spec.inputs},
         {"objective", spec.objective.name},
         {"direction", std::string(to_string(spec.objective.direction))}};
  if (!spec.objective.quantity.empty()) f["quantity"] = spec.objective.quantity;
  if (!spec.outputs.empty()) f["outputs"] = spec.outputs;
  json args = json::object();
  for (const auto& [k, v] : spec.evaluator.args) args[k] = v;
  f["evaluator"] = json{{"kind", spec.evaluator.kind}, {"args", args}};
  return f;
}

json to_json(const Scenario& scenario) {
  json params = json::array();
  for (const auto& p : scenario.parameters()) params.push_back(to_json(p));
  json funcs = json::array();
  for (const auto& f : scenario.functions()) funcs.push_back(to_json(f));
  return json{{"parameters", params}, {"functions", funcs}};
}

json to_json(const Configuration& config) {
  json out = json::object();
  for (const auto& [k, v] : config.values()) out[k] = v;
  return out;
}

}  // namespace cancoord
