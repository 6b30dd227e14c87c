#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "brdyn/dynamics.hpp"
#include "brdyn/graph_game.hpp"
#include "brdyn/tokens.hpp"

namespace brdyn {

// Token framework on circle games. Positions are ring positions of the
// GraphGame (see GraphGame::ring_players); resource r at position p lies
// between the players at positions p − 1 and p. Clockwise = increasing position.

enum class Direction { Clockwise, Anticlockwise };
enum class TokenKind { Overload, Underload };
enum class CaseTag { Case1, Case2, Case3, Case4 };

std::string_view to_string(Direction d);
std::string_view to_string(CaseTag c);

/// +1 on resources shared by two players, −1 on unused resources. Throws
/// InvalidGame for a non-circle game and std::invalid_argument on congestion > 2.
TokenMap place_tokens(const GraphGame& circle, const State& state);

/// The unique state realizing a legal non-empty placement. Throws
/// std::invalid_argument for an empty or illegal placement.
State tokens_to_state(const GraphGame& circle, const TokenMap& tokens);

/// (overload direction, underload direction). Throws std::invalid_argument for
/// types 1 and 1'.
std::pair<Direction, Direction> token_directions(PlayerType t);

struct TerminationPoints {
  std::vector<ResourceId> overload;
  std::vector<ResourceId> underload;
};

/// Termination points per token kind, as resource ids in ring order.
TerminationPoints termination_points(const GraphGame& circle);

/// Requires a circle without type-1/1' players (std::invalid_argument otherwise).
CaseTag classify_case(const GraphGame& circle);

/// Sum over tokens of (1 + moves until the token reaches a termination point).
std::int64_t potential_case1(const GraphGame& circle, const State& state);
/// (#overload tokens, sum of distances) for games with termination points of one kind.
std::pair<std::int64_t, std::int64_t> potential_case2(const GraphGame& circle, const State& state);
/// (#overload tokens, sum of collision distances of paired tokens).
std::pair<std::int64_t, std::int64_t> potential_case3(const GraphGame& circle, const State& state);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Expected absorption time of the symmetric ±1 walk on {0..n} started at k,
/// solved exactly from the first-step equations.
Rational walk_expected_steps(std::size_t n, std::size_t k);

/// Total token count before the first move and after each traced move
/// (trace.size() + 1 entries).
std::vector<std::int64_t> token_count_trace(const GraphGame& circle, const RunRecord& record);

/// Maximal runs of consecutive positions playing the same strategy.
struct Block {
  std::size_t start;   // ring position of the first (anticlockwise-most) player
  std::size_t length;
  bool ones;           // true = players play their 1-strategy
};
/// Empty if all players are synchronized.
std::vector<Block> synchronized_blocks(const GraphGame& circle, const State& state);

/// State in which the first `zeros` ring positions play their 0-strategy and
/// the rest their 1-strategy.
State two_block_state(const GraphGame& circle, std::size_t zeros);

}  // namespace brdyn
