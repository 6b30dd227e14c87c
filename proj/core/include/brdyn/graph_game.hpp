#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "brdyn/game.hpp"

namespace brdyn {

enum class Topology { Tree, Circle, General };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view s);

/// The two endpoints of a two-strategy player, oriented.
struct Edge {
  ResourceId zero;
  ResourceId one;
};

/// A game in which every player chooses between two resources, seen as a
/// multigraph with resources as nodes and players as edges.
///
/// For circles, `ring_players[p]` plays between `ring_resources[p]` (its
/// 0-strategy) and `ring_resources[(p + 1) % n]` (its 1-strategy); positions
/// increase clockwise.
struct GraphGame {
  Game base;
  std::vector<Edge> edges;
  Topology topology = Topology::General;
  std::vector<PlayerId> ring_players;
  std::vector<ResourceId> ring_resources;

  std::size_t player_count() const noexcept { return base.player_count(); }
  bool plays_one(const State& s, PlayerId i) const { return s.choice(i) == edges.at(i).one; }
  /// State from one bit per player (true = 1-strategy).
  State state_from_bits(const std::vector<bool>& ones) const;
};

/// Builds the multigraph view and detects the topology.
///
/// Tree: connected, acyclic, #players = #resources − 1 (0-strategy = lower id).
/// Circle: connected, every node of degree 2, #players = #resources; players are
/// oriented along a traversal starting at player 0 from its lower resource id.
/// Throws InvalidGame if some player does not have exactly two strategies.
GraphGame as_graph_game(Game game);

/// Independent census used to cross-check topology detection.
struct DegreeCensus {
  bool connected = false;
  std::vector<std::size_t> degree;
};
DegreeCensus degree_census(const Game& game);

enum class PlayerType { T1, T2, T3, T1p, T2p, T3p };

std::string_view to_string(PlayerType t);
PlayerType parse_player_type(std::string_view s);

/// Type of a player of a circle game from the ordering of d_0(1), d_0(2),
/// d_1(1), d_1(2). Throws InvalidGame if no ordering applies.
PlayerType classify_player_type(const GraphGame& game, PlayerId player);

/// Ordering of the four values (lowest first) that defines each type, using
/// 0 = d_0(1), 1 = d_0(2), 2 = d_1(1), 3 = d_1(2).
std::array<int, 4> type_ordering(PlayerType t);

/// Replaces the player-specific tables of a tree game by common per-resource
/// tables without changing any player's preference order.
///
/// Throws InvalidGame if the game is not a tree and std::overflow_error (with
/// the required bit width) if the construction leaves the 64-bit range.
Game tree_to_standard(const GraphGame& tree);

/// Delay tables realizing "the 0-strategy is the best response iff at most t
/// other players use the 0-resource", sized for `total_players` congestions.
/// Returns {0-resource table, 1-resource table}.
std::pair<std::vector<Delay>, std::vector<Delay>> threshold_delays(long long t,
                                                                   std::size_t total_players);

}  // namespace brdyn
