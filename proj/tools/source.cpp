#include <filesystem>
#include <sstream>
#include <stdexcept>

#include <brdyn/circle.hpp>
#include <brdyn/dynamics.hpp>
#include <brdyn/errors.hpp>
#include <brdyn/game_json.hpp>
#include <brdyn/generators.hpp>

#include "cli.hpp"

namespace brdyn::cli {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::optional<Topology> Source::hint() const {
  if (graph) return graph->topology;
  if (gadget) return Topology::General;
  return std::nullopt;
}

Source build_source(const SourceOptions& opt) {
  const bool from_file = !opt.game_file.empty();
  if (from_file == !opt.builder.empty()) {
    throw std::invalid_argument("give exactly one of a builder (circle, gadget, tree) or --game FILE");
  }
  Source src;
  if (from_file) {
    src.game.emplace(load_game_file(opt.game_file));
    src.name = std::filesystem::path(opt.game_file).stem().string();
    src.n = src.game->player_count();
    try {
      src.graph.emplace(as_graph_game(*src.game));
    } catch (const InvalidGame&) {
      // not every player has two strategies
    }
    return src;
  }
  Rng rng(opt.game_seed);
  if (opt.builder == "circle") {
    std::vector<PlayerType> types;
    if (!opt.types.empty()) {
      if (!opt.all_type.empty()) throw std::invalid_argument("--types and --all-type are exclusive");
      for (const auto& t : split(opt.types, ',')) types.push_back(parse_player_type(t));
      if (opt.n != 0 && opt.n != types.size()) throw std::invalid_argument("--n does not match --types");
    } else {
      if (opt.n < 2) throw std::invalid_argument("circle needs --n >= 2");
      types.assign(opt.n, parse_player_type(opt.all_type.empty() ? "3" : opt.all_type));
    }
    src.graph.emplace(make_circle_game(types, rng));
    src.game.emplace(src.graph->base);
    src.name = "circle";
    src.n = types.size();
  } else if (opt.builder == "gadget") {
    src.gadget.emplace(build_gadget_game(opt.n));
    src.game.emplace(src.gadget->game.base);
    src.name = "gadget";
    src.n = opt.n;
  } else if (opt.builder == "tree") {
    if (opt.n < 2) throw std::invalid_argument("tree needs --n >= 2 resources");
    src.graph.emplace(random_tree_game(opt.n, rng));
    src.game.emplace(src.graph->base);
    src.name = "tree";
    src.n = opt.n;
  } else {
    throw std::invalid_argument("unknown builder '" + opt.builder + "'");
  }
  return src;
}

State initial_state(const Source& src, const SourceOptions& opt) {
  std::string init = opt.init;
  if (init == "default") init = src.gadget ? "canonical" : (src.graph && src.graph->topology == Topology::Circle ? "two-block" : "zeros");
  if (init == "canonical") {
    if (!src.gadget) throw std::invalid_argument("--init canonical needs the gadget builder");
    return initial_configuration(*src.gadget);
  }
  if (init == "two-block") {
    if (!src.graph || src.graph->topology != Topology::Circle) {
      throw std::invalid_argument("--init two-block needs a circle game");
    }
    return two_block_state(*src.graph, opt.zeros.value_or(src.n / 2));
  }
  const GraphGame* graph = src.gadget ? &src.gadget->game : (src.graph ? &*src.graph : nullptr);
  if (init == "zeros" || init == "ones") {
    const bool one = init == "ones";
    if (graph) return graph->state_from_bits(std::vector<bool>(graph->player_count(), one));
    if (one) throw std::invalid_argument("--init ones needs a two-strategy game");
    std::vector<ResourceId> choice;
    for (PlayerId i = 0; i < src.base().player_count(); ++i) choice.push_back(src.base().strategies(i)[0]);
    return State(src.base(), std::move(choice));
  }
  if (init == "random") {
    Rng rng(opt.game_seed ^ 0x9e3779b97f4a7c15ULL);
    return random_state(src.base(), rng);
  }
  throw std::invalid_argument("unknown --init '" + init + "'");
}

}  // namespace brdyn::cli
