#include "cancoord/bargain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>

namespace cancoord {

CandidateSet candidate_set(const ParameterSpec& spec) {
  return {spec.name, parameter_grid(spec)};
}

CandidateSet make_candidate_set(const Scenario& scenario, std::string param,
                                std::vector<double> values) {
  const auto& spec = scenario.parameter(param);
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "empty candidate set", param);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= spec.min && values[i] <= spec.max)) {
      throw Error(ErrorCode::InvalidArgument, "candidate outside parameter bounds", param);
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "candidates must be strictly increasing", param);
    }
  }
  return {std::move(param), std::move(values)};
}

double DisagreementPoint::at(std::string_view objective) const {
  auto it = d_.find(objective);
  return it == d_.end() ? 0.0 : it->second;
}

void DisagreementPoint::check(const Scenario& scenario) const {
  for (const auto& [name, value] : d_) {
    if (!scenario.is_objective(name)) {
      throw Error(ErrorCode::UnknownName, "disagreement entry '" + name + "' is not an objective",
                  name);
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::InvalidArgument, "disagreement value must be finite", name);
    }
  }
}

namespace {

double product_of(const Scenario& scenario, const std::vector<double>& util,
                  const DisagreementPoint& d) {
  double p = 1.0;
  for (std::size_t i = 0; i < util.size(); ++i) {
    const double gain = util[i] - d.at(scenario.objectives()[i].name);
    if (!(gain > 0.0)) return 0.0;
    p *= gain;
  }
  return p;
}

BargainOutcome finish(const Scenario& scenario, const Configuration& config, double product,
                      std::vector<TraceEntry> trace) {
  BargainOutcome out;
  out.config = config;
  out.nash_product = product;
  out.per_objective = evaluate(scenario, config);
  out.trace = std::move(trace);
  return out;
}

}  // namespace

double nash_product(const Scenario& scenario, const Configuration& config,
                    const DisagreementPoint& d) {
  return product_of(scenario, utilities(scenario, config), d);
}

ParameterChoice optimize_parameter(const Scenario& scenario, const CandidateSet& cs,
                                   const Configuration& base, const DisagreementPoint& d) {
  scenario.parameter(cs.param);
  scenario.validate(base);
  d.check(scenario);
  if (cs.values.empty()) throw Error(ErrorCode::InvalidArgument, "empty candidate set", cs.param);

  std::vector<TraceEntry> trace;
  trace.reserve(cs.values.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < cs.values.size(); ++i) {
    auto cfg = base.with(cs.param, cs.values[i]);
    const double p = nash_product(scenario, cfg, d);
    trace.push_back({std::move(cfg), p});
    // strict comparison keeps the smallest value on ties
    if (p > trace[best].product) best = i;
  }
  if (!(trace[best].product > 0.0)) {
    throw Error(ErrorCode::AllBelowDisagreement,
                "no candidate of '" + cs.param + "' improves on the disagreement point", cs.param);
  }
  const double value = cs.values[best];
  const auto cfg = trace[best].config;
  const double product = trace[best].product;
  return {value, finish(scenario, cfg, product, std::move(trace))};
}

BargainOutcome sequential_nbs(const Scenario& scenario, const std::vector<std::string>& order,
                              const DisagreementPoint& d) {
  d.check(scenario);
  std::set<std::string, std::less<>> seen;
  for (const auto& name : order) {
    scenario.parameter(name);
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::InvalidArgument, "parameter '" + name + "' appears twice in order",
                  name);
    }
  }

  Configuration current = scenario.defaults();
  if (order.empty()) {
    const double p = nash_product(scenario, current, d);
    return finish(scenario, current, p, {{current, p}});
  }

  std::vector<TraceEntry> trace;
  double product = 0.0;
  for (const auto& name : order) {
    auto choice = optimize_parameter(scenario, candidate_set(scenario.parameter(name)), current, d);
    current = choice.outcome.config;
    product = choice.outcome.nash_product;
    trace.insert(trace.end(), std::make_move_iterator(choice.outcome.trace.begin()),
                 std::make_move_iterator(choice.outcome.trace.end()));
  }
  return finish(scenario, current, product, std::move(trace));
}

BargainOutcome coordinate_ascent(const Scenario& scenario, const Configuration& start,
                                 const DisagreementPoint& d, std::size_t max_iters, double tol) {
  if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be at least 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  scenario.validate(start);
  d.check(scenario);

  std::vector<std::vector<double>> grids;
  for (const auto& p : scenario.parameters()) grids.push_back(parameter_grid(p));

  Configuration current = start;
  double product = nash_product(scenario, current, d);
  std::vector<TraceEntry> trace{{current, product}};

  bool converged = false;
  std::size_t passes = 0;
  while (passes < max_iters) {
    ++passes;
    bool moved = false;
    for (std::size_t k = 0; k < scenario.parameters().size(); ++k) {
      const auto& name = scenario.parameters()[k].name;
      const auto& grid = grids[k];
      while (true) {
        const double v = current.at(name);
        // nearest lattice points strictly below and above the current value
        auto up = std::upper_bound(grid.begin(), grid.end(), v);
        auto down = std::lower_bound(grid.begin(), grid.end(), v);
        std::vector<double> neighbours;
        if (down != grid.begin()) neighbours.push_back(*std::prev(down));
        if (up != grid.end()) neighbours.push_back(*up);

        bool improved = false;
        Configuration best_cfg;
        double best_p = product + tol * std::abs(product);
        for (double n : neighbours) {
          auto cfg = current.with(name, n);
          const double p = nash_product(scenario, cfg, d);
          trace.push_back({cfg, p});
          if (p > best_p && p > product) {
            best_p = p;
            best_cfg = std::move(cfg);
            improved = true;
          }
        }
        if (!improved) break;
        current = std::move(best_cfg);
        product = best_p;
        moved = true;
      }
    }
    if (!moved) {
      converged = true;
      break;
    }
  }

  auto out = finish(scenario, current, product, std::move(trace));
  out.converged = converged;
  out.iterations = passes;
  return out;
}

std::size_t grid_cap_from_env() {
  const char* raw = std::getenv("CAN_COORD_GRID_CAP");
  if (!raw || !*raw) return kDefaultGridCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0' || v == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "CAN_COORD_GRID_CAP must be a positive integer, got '" + std::string(raw) + "'");
  }
  return static_cast<std::size_t>(v);
}

BargainOutcome brute_force_nbs(const Scenario& scenario, const DisagreementPoint& d,
                               std::size_t cap) {
  d.check(scenario);
  const auto& params = scenario.parameters();
  std::vector<std::vector<double>> grids;
  std::size_t total = 1;
  for (const auto& p : params) {
    grids.push_back(parameter_grid(p));
    const std::size_t n = grids.back().size();
    if (total > cap / n) {
      total = std::numeric_limits<std::size_t>::max();
    } else {
      total *= n;
    }
  }
  if (total > cap) {
    throw Error(ErrorCode::GridTooLarge,
                "grid has more than " + std::to_string(cap) + " points");
  }

  std::vector<TraceEntry> trace;
  trace.reserve(total);
  std::vector<std::size_t> idx(params.size(), 0);
  std::size_t best = 0;
  // odometer with the first parameter most significant: lexicographic order
  for (std::size_t n = 0; n < total; ++n) {
    Configuration::Values values;
    for (std::size_t k = 0; k < params.size(); ++k) values.emplace(params[k].name, grids[k][idx[k]]);
    Configuration cfg(std::move(values));
    const double p = nash_product(scenario, cfg, d);
    trace.push_back({std::move(cfg), p});
    if (p > trace[best].product) best = n;
    for (std::size_t k = params.size(); k-- > 0;) {
      if (++idx[k] < grids[k].size()) break;
      idx[k] = 0;
    }
  }
  const auto cfg = trace[best].config;
  const double product = trace[best].product;
  return finish(scenario, cfg, product, std::move(trace));
}

}  // namespace cancoord
