#include "cancoord/game.hpp"

#include <algorithm>
#include <cmath>

namespace cancoord {

std::string_view to_string(Strategy s) { return s == Strategy::T ? "T" : "G"; }

std::string to_string(const Profile& p) {
  return "(" + std::string(to_string(p.first)) + "," + std::string(to_string(p.second)) + ")";
}

PayoffMatrix PayoffMatrix::make(double r1, double r2, double r3, double r4) {
  for (double v : {r1, r2, r3, r4}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "payoffs must be finite");
  }
  return {r1, r2, r3, r4};
}

std::pair<double, double> PayoffMatrix::payoffs(const Profile& p) const {
  const auto [a, b] = p;
  if (a == Strategy::G && b == Strategy::G) return {r1, r1};
  if (a == Strategy::T && b == Strategy::T) return {r2, r2};
  if (a == Strategy::T) return {r3, r4};
  return {r4, r3};
}

bool is_prisoners_dilemma(const PayoffMatrix& m) {
  const bool defect_dominates = m.r3 > m.r1 && m.r2 > m.r4;
  const bool cooperation_pays = m.r1 > m.r2;
  return defect_dominates && cooperation_pays;
}

std::optional<Strategy> dominant_strategy(const PayoffMatrix& m) {
  if (m.r3 > m.r1 && m.r2 > m.r4) return Strategy::T;
  if (m.r1 > m.r3 && m.r4 > m.r2) return Strategy::G;
  return std::nullopt;
}

namespace {
Strategy other(Strategy s) { return s == Strategy::T ? Strategy::G : Strategy::T; }
}  // namespace

std::vector<Profile> pure_nash(const PayoffMatrix& m) {
  std::vector<Profile> out;
  for (const auto& p : kAllProfiles) {
    const auto [u_row, u_col] = m.payoffs(p);
    const double row_dev = m.payoffs({other(p.first), p.second}).first;
    const double col_dev = m.payoffs({p.first, other(p.second)}).second;
    if (row_dev <= u_row && col_dev <= u_col) out.push_back(p);
  }
  return out;
}

std::vector<Profile> social_optimum(const PayoffMatrix& m) {
  std::array<double, 4> totals{};
  for (std::size_t i = 0; i < kAllProfiles.size(); ++i) {
    const auto [a, b] = m.payoffs(kAllProfiles[i]);
    totals[i] = a + b;
  }
  const double best = *std::max_element(totals.begin(), totals.end());
  std::vector<Profile> out;
  for (std::size_t i = 0; i < kAllProfiles.size(); ++i) {
    if (totals[i] == best) out.push_back(kAllProfiles[i]);
  }
  return out;
}

GameAnalysis analyze(const PayoffMatrix& m) {
  GameAnalysis a;
  a.is_pd = is_prisoners_dilemma(m);
  a.dominant = dominant_strategy(m);
  a.pure_nash = pure_nash(m);
  a.social_optimum = social_optimum(m);
  a.coordination_gain = m.r1 - m.r2;
  return a;
}

PayoffDerivation derive_payoffs(const Scenario& scenario, const ConflictRecord& conflict,
                                const Configuration& config) {
  if (conflict.category != ConflictCategory::A1) {
    throw Error(ErrorCode::NotA1Conflict, "payoffs are derived for shared-input (A1) conflicts, got " +
                                              std::string(to_string(conflict.category)));
  }
  const auto& spec = scenario.parameter(conflict.subject);
  const auto* fa = scenario.find_function(conflict.functions.first);
  const auto* fb = scenario.find_function(conflict.functions.second);
  if (!fa || !fb) {
    throw Error(ErrorCode::UnknownName, "conflict names a function missing from the scenario");
  }
  scenario.validate(config);

  PayoffDerivation d;
  d.parameter = spec.name;
  d.baseline_value = config.at(spec.name);
  d.grid = parameter_grid(spec);
  if (d.grid.size() < 2) {
    throw Error(ErrorCode::DegenerateGrid,
                "parameter '" + spec.name + "' has fewer than two grid points", spec.name);
  }

  const std::array<std::size_t, 2> obj = {*scenario.objective_index(fa->objective.name),
                                          *scenario.objective_index(fb->objective.name)};
  // utility of each player for every grid value of q
  std::array<std::vector<double>, 2> u;
  for (double q : d.grid) {
    const auto util = utilities(scenario, config.with(spec.name, q));
    u[0].push_back(util[obj[0]]);
    u[1].push_back(util[obj[1]]);
  }
  const auto baseline = utilities(scenario, config);

  std::array<std::size_t, 2> pref{};
  for (std::size_t i = 0; i < 2; ++i) {
    pref[i] = 0;
    for (std::size_t k = 1; k < d.grid.size(); ++k) {
      if (u[i][k] > u[i][pref[i]]) pref[i] = k;
    }
  }

  const std::array<const FunctionSpec*, 2> fns = {fa, fb};
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t j = 1 - i;
    PayoffMatrix m;
    m.r1 = baseline[obj[i]];
    m.r3 = u[i][pref[i]];
    m.r4 = u[i][pref[j]];
    m.r2 = 0.5 * (m.r3 + m.r4);
    d.players[i] = {fns[i]->id, d.grid[pref[i]], m};
  }
  const auto& a = d.players[0].matrix;
  const auto& b = d.players[1].matrix;
  d.symmetric = {0.5 * (a.r1 + b.r1), 0.5 * (a.r2 + b.r2), 0.5 * (a.r3 + b.r3),
                 0.5 * (a.r4 + b.r4)};
  return d;
}

}  // namespace cancoord
