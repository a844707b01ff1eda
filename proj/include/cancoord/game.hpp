#pragma once

// Symmetric two-player game over T (keep pursuing the contested interest)
// and G (give it up).
//
//            G            T
//   G   (r1, r1)     (r4, r3)
//   T   (r3, r4)     (r2, r2)

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cancoord/conflicts.hpp"
#include "cancoord/model.hpp"

namespace cancoord {

enum class Strategy { T, G };

std::string_view to_string(Strategy s);

/// (row player, column player)
using Profile = std::pair<Strategy, Strategy>;

std::string to_string(const Profile& p);

/// Enumeration order used for every profile list.
inline constexpr std::array<Profile, 4> kAllProfiles = {
    Profile{Strategy::T, Strategy::T}, Profile{Strategy::T, Strategy::G},
    Profile{Strategy::G, Strategy::T}, Profile{Strategy::G, Strategy::G}};

struct PayoffMatrix {
  double r1 = 0.0;  // (G, G), each
  double r2 = 0.0;  // (T, T), each
  double r3 = 0.0;  // T-player under (T, G)
  double r4 = 0.0;  // G-player under (T, G)

  /// Throws InvalidArgument on non-finite entries.
  static PayoffMatrix make(double r1, double r2, double r3, double r4);

  std::pair<double, double> payoffs(const Profile& p) const;
  PayoffMatrix affine(double a, double b) const { return {a * r1 + b, a * r2 + b, a * r3 + b, a * r4 + b}; }

  bool operator==(const PayoffMatrix&) const = default;
};

struct GameAnalysis {
  bool is_pd = false;
  std::optional<Strategy> dominant;
  std::vector<Profile> pure_nash;
  std::vector<Profile> social_optimum;
  /// r1 - r2: per-player gain of moving from (T, T) to (G, G). Meaningful as
  /// the coordinator's gain only when is_pd.
  double coordination_gain = 0.0;
};

/// Defecting strictly dominates (r3 > r1, r2 > r4) and mutual cooperation
/// strictly beats mutual defection (r1 > r2).
bool is_prisoners_dilemma(const PayoffMatrix& m);

/// Strict dominance only.
std::optional<Strategy> dominant_strategy(const PayoffMatrix& m);

/// Profiles where no unilateral deviation is strictly profitable.
std::vector<Profile> pure_nash(const PayoffMatrix& m);

/// Profiles maximizing the payoff sum.
std::vector<Profile> social_optimum(const PayoffMatrix& m);

GameAnalysis analyze(const PayoffMatrix& m);

struct PlayerPayoffs {
  std::string function;
  double preferred_value = 0.0;
  /// Payoffs to this player, with this player as the row player.
  PayoffMatrix matrix;
};

struct PayoffDerivation {
  std::string parameter;
  double baseline_value = 0.0;
  std::vector<double> grid;
  std::array<PlayerPayoffs, 2> players;
  /// Entrywise mean of the two players' matrices.
  PayoffMatrix symmetric;
};

/// Grounds r1..r4 in objective values for an A1 conflict over parameter q.
/// Each player's preferred q is the argmax of its own utility over q's grid
/// (ties to the smaller value), everything else held at `config`. For player i
/// with preference q_i and opponent preference q_j:
///   r1 = u_i(config)       q untouched
///   r3 = u_i(q_i)          i imposes its preference
///   r4 = u_i(q_j)          the opponent imposes its preference
///   r2 = (u_i(q_i) + u_i(q_j)) / 2   both write; mean over write orders
/// Errors: NotA1Conflict, DegenerateGrid.
PayoffDerivation derive_payoffs(const Scenario& scenario, const ConflictRecord& conflict,
                                const Configuration& config);

}  // namespace cancoord
