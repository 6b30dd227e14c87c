#pragma once

#include <cstdint>
#include <vector>

#include "brdyn/dynamics.hpp"
#include "brdyn/graph_game.hpp"

namespace brdyn {

/// Tables for `strategies` resources over congestions 1..n whose values are a
/// random arrangement of 1..strategies·n, sorted within each table. Always tie-free.
std::vector<std::vector<Delay>> random_tables(std::size_t strategies, std::size_t n, Rng& rng);

/// Players with 1..max_strategies distinct random strategies and random tables.
Game random_game(std::size_t players, std::size_t resources, std::size_t max_strategies, Rng& rng);

/// Random tree on `resources` nodes (each node after the first attaches to a
/// uniformly chosen earlier node) with random tables.
GraphGame random_tree_game(std::size_t resources, Rng& rng);

/// Circle of types.size() ≥ 2 players in which the player at ring position p
/// spans resources p and p + 1 (mod n) and has type types[p]. Delay values are
/// random increasing numbers arranged by the type's ordering.
GraphGame make_circle_game(const std::vector<PlayerType>& types, Rng& rng);

/// Uniformly random strategy profile.
State random_state(const Game& game, Rng& rng);

}  // namespace brdyn
