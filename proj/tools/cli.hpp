#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <brdyn/gadget.hpp>
#include <brdyn/game.hpp>
#include <brdyn/graph_game.hpp>

namespace brdyn::cli {

/// Where a game comes from: a builder name or a JSON file.
struct SourceOptions {
  std::string builder;  // circle | gadget | tree, empty when game_file is set
  std::string game_file;
  std::size_t n = 0;
  std::string all_type;
  std::string types;  // comma-separated, e.g. "3,2,2'"
  std::uint64_t game_seed = 1;
  std::string init = "default";  // default | two-block | canonical | zeros | ones | random
  std::optional<std::size_t> zeros;
};

struct Source {
  std::string name;
  std::size_t n = 0;
  std::optional<Game> game;
  std::optional<GraphGame> graph;
  std::optional<GadgetGame> gadget;

  const Game& base() const { return *game; }
  std::optional<Topology> hint() const;
};

/// Throws std::invalid_argument for inconsistent options.
Source build_source(const SourceOptions& opt);
State initial_state(const Source& src, const SourceOptions& opt);

std::vector<std::string> split(const std::string& text, char sep);

/// Runs a verification suite, printing one line per check. Returns true if all
/// checks pass. Throws std::invalid_argument for an unknown suite.
bool run_verify_suite(const std::string& suite);
const std::vector<std::string>& verify_suites();

}  // namespace brdyn::cli
