#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "brdyn/game.hpp"
#include "brdyn/graph_game.hpp"

namespace brdyn {

// Format:
//   {"resources": m,
//    "players": [{"strategies": [r, ...], "delays": {"r": [d(1), ..., d(n)], ...}}, ...],
//    "topology_hint": "tree" | "circle" | "general"}      (optional)
//
// Loading validates the game and, if present, the topology hint; every problem
// is reported as InvalidGame.

Game parse_game_json(std::string_view text);
Game load_game_json(std::istream& is);
Game load_game_file(const std::string& path);

std::string game_to_json(const Game& game, std::optional<Topology> hint = std::nullopt);
void save_game_json(std::ostream& os, const Game& game, std::optional<Topology> hint = std::nullopt);

}  // namespace brdyn
