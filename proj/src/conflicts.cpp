#include "cancoord/conflicts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace cancoord {

std::string_view to_string(ConflictCategory c) {
  switch (c) {
    case ConflictCategory::A1: return "A1";
    case ConflictCategory::A2: return "A2";
    case ConflictCategory::B: return "B";
    case ConflictCategory::C1: return "C1";
    case ConflictCategory::C2: return "C2";
  }
  return "?";
}

std::optional<ConflictCategory> parse_category(std::string_view s) {
  for (auto c : kAllCategories) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

namespace {

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

std::pair<std::string, std::string> ordered(const std::string& a, const std::string& b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

std::string join(const std::vector<std::string>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::vector<ConflictRecord> shared_parameter(const Scenario& scenario, ConflictCategory cat,
                                             std::vector<std::string> FunctionSpec::*field,
                                             std::string_view noun) {
  std::vector<ConflictRecord> out;
  const auto& fs = scenario.functions();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      for (const auto& name : fs[i].*field) {
        if (!scenario.is_parameter(name) || !contains(fs[j].*field, name)) continue;
        auto pair = ordered(fs[i].id, fs[j].id);
        out.push_back({cat, pair, name, {},
                       pair.first + " and " + pair.second + " share " + std::string(noun) +
                           " parameter " + name});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<ConflictRecord> detect_shared_inputs(const Scenario& scenario) {
  return shared_parameter(scenario, ConflictCategory::A1, &FunctionSpec::inputs, "input");
}

std::vector<ConflictRecord> detect_shared_outputs(const Scenario& scenario) {
  return shared_parameter(scenario, ConflictCategory::A2, &FunctionSpec::outputs, "output");
}

std::vector<ConflictRecord> detect_measurement(const Scenario& scenario) {
  std::vector<ConflictRecord> out;
  for (const auto& source : scenario.functions()) {
    const auto& o = source.objective.name;
    for (const auto& target : scenario.functions()) {
      if (&target == &source || !contains(target.inputs, o)) continue;
      out.push_back({ConflictCategory::B,
                     {source.id, target.id},
                     o,
                     {o, target.objective.name},
                     "actions of " + source.id + " change " + o + ", which " + target.id +
                         " reads when producing " + target.objective.name});
    }
  }
  return out;
}

std::vector<ConflictRecord> detect_direct_characteristic(const Scenario& scenario) {
  std::vector<ConflictRecord> out;
  const auto& fs = scenario.functions();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      const auto& a = fs[i].objective;
      const auto& b = fs[j].objective;
      if (a.quantity.empty() || a.quantity != b.quantity || a.direction == b.direction) continue;
      const auto& first = fs[i].id < fs[j].id ? fs[i] : fs[j];
      const auto& second = &first == &fs[i] ? fs[j] : fs[i];
      out.push_back({ConflictCategory::C1,
                     {first.id, second.id},
                     first.objective.name,
                     {},
                     first.id + " and " + second.id + " push quantity " + a.quantity +
                         " in opposite directions"});
    }
  }
  return out;
}

std::vector<ConflictRecord> detect_logical_dependency(const Scenario& scenario) {
  std::vector<ConflictRecord> out;
  const auto& graph = scenario.graph();
  for (const auto& param : scenario.parameters()) {
    // BFS with sorted successors yields the lexicographically first shortest
    // path to each reachable node.
    std::map<std::string, std::string> parent;
    std::map<std::string, std::size_t> depth;
    std::deque<std::string> queue{param.name};
    depth[param.name] = 0;
    while (!queue.empty()) {
      auto node = queue.front();
      queue.pop_front();
      for (auto& next : graph.successors(node)) {
        if (depth.count(next)) continue;
        depth[next] = depth[node] + 1;
        parent[next] = node;
        queue.push_back(next);
      }
    }
    for (const auto& [node, d] : depth) {
      if (d < 2) continue;  // direct input, no intermediate objective
      std::vector<std::string> path{node};
      while (path.back() != param.name) path.push_back(parent.at(path.back()));
      std::reverse(path.begin(), path.end());
      const auto* src = scenario.owner_of(path[1]);
      const auto* dst = scenario.owner_of(node);
      out.push_back({ConflictCategory::C2,
                     {src->id, dst->id},
                     param.name,
                     path,
                     "changing " + param.name + " changes " + node + " via " + join(path, " -> ")});
    }
  }
  return out;
}

std::vector<ConflictRecord> detect_conflicts(const Scenario& scenario) {
  std::vector<ConflictRecord> all;
  for (auto&& part : {detect_shared_inputs(scenario), detect_shared_outputs(scenario),
                      detect_measurement(scenario), detect_direct_characteristic(scenario),
                      detect_logical_dependency(scenario)}) {
    all.insert(all.end(), part.begin(), part.end());
  }
  std::sort(all.begin(), all.end(), [](const ConflictRecord& a, const ConflictRecord& b) {
    return std::tie(a.category, a.functions, a.subject, a.path) <
           std::tie(b.category, b.functions, b.subject, b.path);
  });
  return all;
}

std::map<ConflictCategory, std::size_t> conflict_summary(
    const std::vector<ConflictRecord>& records) {
  std::map<ConflictCategory, std::size_t> out;
  for (auto c : kAllCategories) out[c] = 0;
  for (const auto& r : records) ++out[r.category];
  return out;
}

bool path_is_sound(const Scenario& scenario, const ConflictRecord& record) {
  const auto& g = scenario.graph();
  if (!g.has_node(record.subject)) return false;
  if (!scenario.find_function(record.functions.first) ||
      !scenario.find_function(record.functions.second)) {
    return false;
  }
  for (const auto& n : record.path) {
    if (!g.has_node(n)) return false;
  }
  for (std::size_t i = 0; i + 1 < record.path.size(); ++i) {
    if (!g.has_edge(record.path[i], record.path[i + 1])) return false;
  }
  switch (record.category) {
    case ConflictCategory::A1:
    case ConflictCategory::A2:
    case ConflictCategory::C1:
      return record.path.empty();
    case ConflictCategory::B:
      return record.path.size() == 2 && record.path.front() == record.subject;
    case ConflictCategory::C2:
      return record.path.size() >= 3 && record.path.front() == record.subject;
  }
  return false;
}

}  // namespace cancoord
