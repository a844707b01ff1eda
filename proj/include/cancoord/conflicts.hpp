#pragma once

// Structural conflict detection between pairs of functions.
//
//   A1  two functions read the same parameter
//   A2  two functions actuate the same output parameter
//   B   one function's objective is an input of another function
//   C1  two objectives over the same declared quantity, opposing directions
//   C2  a parameter read by one function reaches another function's
//       objective only through at least one intermediate objective

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cancoord/model.hpp"

namespace cancoord {

enum class ConflictCategory { A1, A2, B, C1, C2 };

inline constexpr std::array<ConflictCategory, 5> kAllCategories = {
    ConflictCategory::A1, ConflictCategory::A2, ConflictCategory::B, ConflictCategory::C1,
    ConflictCategory::C2};

std::string_view to_string(ConflictCategory c);
std::optional<ConflictCategory> parse_category(std::string_view s);

struct ConflictRecord {
  ConflictCategory category;
  std::pair<std::string, std::string> functions;
  std::string subject;
  std::vector<std::string> path;
  std::string explanation;

  bool operator==(const ConflictRecord&) const = default;
};

/// Sorted by (category, function pair, subject).
std::vector<ConflictRecord> detect_conflicts(const Scenario& scenario);

// Individual detectors, unsorted. detect_conflicts concatenates and sorts.
std::vector<ConflictRecord> detect_shared_inputs(const Scenario& scenario);
std::vector<ConflictRecord> detect_shared_outputs(const Scenario& scenario);
std::vector<ConflictRecord> detect_measurement(const Scenario& scenario);
/// Interpretation: same non-empty ObjectiveSpec::quantity, opposing directions.
std::vector<ConflictRecord> detect_direct_characteristic(const Scenario& scenario);
/// One record per (source parameter, terminal objective) with the
/// lexicographically first shortest path as witness.
std::vector<ConflictRecord> detect_logical_dependency(const Scenario& scenario);

/// Every category present, absent ones mapped to 0.
std::map<ConflictCategory, std::size_t> conflict_summary(const std::vector<ConflictRecord>& records);

/// True when the record's subject and path elements exist and every
/// consecutive path pair is an edge of the dependency graph.
bool path_is_sound(const Scenario& scenario, const ConflictRecord& record);

}  // namespace cancoord
