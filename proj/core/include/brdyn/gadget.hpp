#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "brdyn/graph_game.hpp"
#include "brdyn/tokens.hpp"
#include "brdyn/transition_graph.hpp"

namespace brdyn {

/// The ring of n gadgets with exponentially long best-response runs.
///
/// Gadget i owns resources r_{i,0..2} (ids 3i, 3i+1, 3i+2) and shares
/// r_{i,3} = r_{i+1,0} with its clockwise neighbour. Each gadget has five groups
/// of n players; group j spans `edge(j)` and switches to its 0-strategy iff at
/// most `thresholds[j]` other players use the 0-resource.
struct GadgetGame {
  std::size_t n;
  GraphGame game;
  std::array<long long, 5> thresholds;

  static constexpr std::size_t kGroups = 5;

  /// Resource id of r_{gadget, j}, j ∈ {0, 1, 2, 3}.
  ResourceId resource(std::size_t gadget, int j) const;
  /// (0-resource index, 1-resource index) of group j inside a gadget.
  static std::pair<int, int> edge(int group);
  PlayerId player(std::size_t gadget, int group, std::size_t index) const;
  std::size_t gadget_of(PlayerId p) const { return p / (kGroups * n); }
  int group_of(PlayerId p) const { return static_cast<int>(p / n % kGroups); }
  std::size_t player_count() const { return kGroups * n * n; }
};

/// Throws std::invalid_argument for n < 2 (for n = 1 the group spanning
/// r_{0,0} and r_{0,3} would have identical endpoints).
GadgetGame build_gadget_game(std::size_t n);

/// Congestion (3n, n, n) on r_{i,0}, r_{i,1}, r_{i,2} for every gadget.
std::vector<std::uint32_t> equilibrium_reference(const GadgetGame& g);

/// All Nash equilibria by exhaustive search. Throws CapExceeded if there are
/// more than `state_cap` states.
std::vector<State> brute_force_equilibria(const GadgetGame& g,
                                          std::size_t state_cap = kDefaultNodeCap);

/// Groups 0 and 1 on their 0-strategies, groups 2 and 3 on their 1-strategies;
/// in group 4 the lowest-id n/2 (first half of the gadgets) or n/2 + 2 (second
/// half) players on the 1-strategy. Requires even n ≥ 4.
State initial_configuration(const GadgetGame& g);

/// Tokens relative to equilibrium_reference().
TokenMap place_equilibrium_tokens(const GadgetGame& g, const State& s);

struct ReplayPanel {
  std::string label;
  State state;
  TokenMap tokens;
  /// Tokens on r_{h,0..3} of the observed gadget h.
  std::array<int, 4> local{};
  /// Players of each group of gadget h on their 0-strategy.
  std::array<std::size_t, 5> zero_counts{};
};

struct ReplayResult {
  std::size_t gadget = 0;
  std::vector<PlayerId> moves;
  std::vector<ReplayPanel> panels;  // initial state, then one per move
};

/// Replays the six moves by which gadget 0 absorbs the two overload tokens of
/// the initial configuration and emits one overload and one underload. Each
/// mover is the lowest-id unsatisfied player of its group. Throws ReplayError if
/// a move is not a best response and std::logic_error if a panel's local
/// tokens differ from the expected ones.
ReplayResult replay_overload_generation(const GadgetGame& g);

/// The mirror sequence for the two underload tokens on gadget n/2.
ReplayResult replay_underload_generation(const GadgetGame& g);

}  // namespace brdyn
