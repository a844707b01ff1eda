#pragma once

// Nash-bargaining coordination over stepped parameter grids.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cancoord/model.hpp"

namespace cancoord {

struct CandidateSet {
  std::string param;
  std::vector<double> values;  // non-empty, strictly increasing, within bounds
};

CandidateSet candidate_set(const ParameterSpec& spec);

/// Throws InvalidArgument unless `values` is non-empty, strictly increasing
/// and inside the parameter's bounds.
CandidateSet make_candidate_set(const Scenario& scenario, std::string param,
                                std::vector<double> values);

/// Baseline utility per objective; objectives not listed default to 0.
class DisagreementPoint {
 public:
  DisagreementPoint() = default;
  explicit DisagreementPoint(std::map<std::string, double, std::less<>> d) : d_(std::move(d)) {}

  double at(std::string_view objective) const;
  const std::map<std::string, double, std::less<>>& values() const noexcept { return d_; }
  /// Throws UnknownName for entries that are not objectives of `scenario`.
  void check(const Scenario& scenario) const;

 private:
  std::map<std::string, double, std::less<>> d_;
};

struct TraceEntry {
  Configuration config;
  double product;
};

struct BargainOutcome {
  Configuration config;
  double nash_product = 0.0;
  ObjectiveValues per_objective;
  std::vector<TraceEntry> trace;
  bool converged = true;
  std::size_t iterations = 0;  // coordinate-ascent passes
};

/// prod_i (u_i - d_i) over every objective, using direction-normalized
/// utilities; 0 as soon as any u_i <= d_i.
double nash_product(const Scenario& scenario, const Configuration& config,
                    const DisagreementPoint& d = {});

struct ParameterChoice {
  double value;
  BargainOutcome outcome;
};

/// Argmax of the Nash product over `cs` with every other parameter at `base`;
/// ties go to the smallest candidate. Throws AllBelowDisagreement when every
/// candidate scores 0.
ParameterChoice optimize_parameter(const Scenario& scenario, const CandidateSet& cs,
                                   const Configuration& base, const DisagreementPoint& d = {});

/// Starts from defaults and optimizes the listed parameters one at a time,
/// freezing each winner before moving on.
BargainOutcome sequential_nbs(const Scenario& scenario, const std::vector<std::string>& order,
                              const DisagreementPoint& d = {});

/// Derivative-free ascent on the grid lattice. Each pass visits parameters
/// in declaration order and keeps stepping one grid point up or down while the
/// product improves by more than `tol` relative to its current value. Stops
/// after a pass without any move (converged) or after `max_iters` passes.
BargainOutcome coordinate_ascent(const Scenario& scenario, const Configuration& start,
                                 const DisagreementPoint& d = {}, std::size_t max_iters = 100,
                                 double tol = 1e-12);

inline constexpr std::size_t kDefaultGridCap = 1'000'000;

/// Reads CAN_COORD_GRID_CAP, falling back to kDefaultGridCap.
std::size_t grid_cap_from_env();

/// Exhaustive search over the Cartesian product of all candidate sets; ties
/// go to the lexicographically smallest configuration in parameter
/// declaration order. Throws GridTooLarge above `cap` points.
BargainOutcome brute_force_nbs(const Scenario& scenario, const DisagreementPoint& d = {},
                               std::size_t cap = kDefaultGridCap);

}  // namespace cancoord
