#include "brdyn/game_json.hpp"

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "brdyn/errors.hpp"

namespace brdyn {

using nlohmann::json;

namespace {

Game from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidGame("game JSON must be an object");
  if (!doc.contains("resources") || !doc["resources"].is_number_unsigned()) {
    throw InvalidGame("'resources' must be a non-negative integer");
  }
  if (!doc.contains("players") || !doc["players"].is_array()) {
    throw InvalidGame("'players' must be an array");
  }
  const auto m = doc["resources"].get<std::size_t>();
  std::vector<PlayerSpec> players;
  for (std::size_t i = 0; i < doc["players"].size(); ++i) {
    const json& p = doc["players"][i];
    const std::string where = "player " + std::to_string(i) + ": ";
    if (!p.is_object() || !p.contains("strategies") || !p.contains("delays")) {
      throw InvalidGame(where + "needs 'strategies' and 'delays'");
    }
    PlayerSpec spec;
    spec.strategies = p["strategies"].get<std::vector<ResourceId>>();
    const json& delays = p["delays"];
    if (!delays.is_object()) throw InvalidGame(where + "'delays' must be an object");
    for (ResourceId r : spec.strategies) {
      const std::string key = std::to_string(r);
      if (!delays.contains(key)) throw InvalidGame(where + "no delay table for resource " + key);
      spec.delays.push_back(delays[key].get<std::vector<Delay>>());
    }
    if (delays.size() != spec.strategies.size()) {
      throw InvalidGame(where + "delay tables for resources outside the strategy set");
    }
    players.push_back(std::move(spec));
  }
  Game game = [&] {
    try {
      return make_game(m, std::move(players));
    } catch (const std::invalid_argument& e) {
      throw InvalidGame(e.what());
    }
  }();
  if (doc.contains("topology_hint")) {
    const Topology hint = parse_topology(doc["topology_hint"].get<std::string>());
    bool two_strategy = true;
    for (PlayerId i = 0; i < game.player_count(); ++i) two_strategy &= game.strategy_count(i) == 2;
    const Topology actual = two_strategy ? as_graph_game(game).topology : Topology::General;
    if (actual != hint) {
      throw InvalidGame("topology hint '" + std::string(to_string(hint)) + "' but the game is '" +
                        std::string(to_string(actual)) + "'");
    }
  }
  return game;
}

}  // namespace

Game parse_game_json(std::string_view text) {
  try {
    return from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw InvalidGame(std::string("malformed game JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidGame(e.what());
  }
}

Game load_game_json(std::istream& is) {
  const std::string text{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
  return parse_game_json(text);
}

Game load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_game_json(in);
}

std::string game_to_json(const Game& game, std::optional<Topology> hint) {
  json doc;
  doc["resources"] = game.resource_count();
  json players = json::array();
  for (PlayerId i = 0; i < game.player_count(); ++i) {
    const PlayerSpec spec = game.player(i);
    json delays = json::object();
    for (std::size_t s = 0; s < spec.strategies.size(); ++s) {
      delays[std::to_string(spec.strategies[s])] = spec.delays[s];
    }
    players.push_back({{"strategies", spec.strategies}, {"delays", delays}});
  }
  doc["players"] = std::move(players);
  if (hint) doc["topology_hint"] = std::string(to_string(*hint));
  return doc.dump(2);
}

void save_game_json(std::ostream& os, const Game& game, std::optional<Topology> hint) {
  os << game_to_json(game, hint) << '\n';
}

}  // namespace brdyn
