#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace brdyn {

using PlayerId = std::uint32_t;
using ResourceId = std::uint32_t;
using Delay = std::uint64_t;

/// Strategy set and delay tables of one player.
///
/// `delays[s][k - 1]` is the delay the player experiences on `strategies[s]`
/// when the congestion there is `k`, for k = 1..player_count.
struct PlayerSpec {
  std::vector<ResourceId> strategies;
  std::vector<std::vector<Delay>> delays;
};

/// A player-specific singleton congestion game.
///
/// Tables are fully materialized for every congestion 1..n. The constructor only
/// checks shape (one table of length n per strategy, non-empty strategy sets);
/// use validate_game() for the model invariants, or make_game() to do both.
class Game {
 public:
  Game(std::size_t resource_count, std::vector<PlayerSpec> players);

  std::size_t player_count() const noexcept { return strategy_offset_.size() - 1; }
  std::size_t resource_count() const noexcept { return resource_count_; }

  std::span<const ResourceId> strategies(PlayerId i) const;
  std::size_t strategy_count(PlayerId i) const;

  /// Index of `r` inside the strategy set of `i`, if present.
  std::optional<std::size_t> slot_of(PlayerId i, ResourceId r) const;

  /// Table d_r^i(1..n) of the strategy in `slot`.
  std::span<const Delay> table(PlayerId i, std::size_t slot) const;

  /// d_r^i(k). Throws std::out_of_range if r is not a strategy of i or k ∉ [1, n].
  Delay delay(PlayerId i, ResourceId r, std::uint32_t congestion) const;

  /// Players whose strategy set contains `r`, ascending.
  std::span<const PlayerId> interested(ResourceId r) const;

  PlayerSpec player(PlayerId i) const;

  friend bool operator==(const Game& a, const Game& b);

 private:
  void check_player(PlayerId i) const;

  std::size_t resource_count_;
  std::vector<std::size_t> strategy_offset_;  // size n + 1
  std::vector<ResourceId> strategies_;
  std::vector<Delay> delays_;  // per strategy entry, n consecutive values
  std::vector<std::size_t> interested_offset_;
  std::vector<PlayerId> interested_;
};

/// One choice per player plus the derived congestion vector.
class State {
 public:
  /// Throws std::invalid_argument if `choice` has the wrong length or picks a
  /// resource outside a player's strategy set.
  State(const Game& game, std::vector<ResourceId> choice);

  std::size_t player_count() const noexcept { return choice_.size(); }
  ResourceId choice(PlayerId i) const { return choice_.at(i); }
  std::uint32_t congestion(ResourceId r) const { return congestion_.at(r); }
  const std::vector<ResourceId>& choices() const noexcept { return choice_; }
  const std::vector<std::uint32_t>& congestions() const noexcept { return congestion_; }

  /// Moves player i to `to`, updating the two affected congestions.
  /// The caller guarantees `to` is in Σ_i.
  void move(PlayerId i, ResourceId to);

  friend bool operator==(const State& a, const State& b) { return a.choice_ == b.choice_; }

 private:
  std::vector<ResourceId> choice_;
  std::vector<std::uint32_t> congestion_;
};

/// Recounts congestions from scratch.
std::vector<std::uint32_t> recount(const Game& game, const std::vector<ResourceId>& choice);

struct Violation {
  enum class Kind { EmptyStrategySet, ResourceOutOfRange, DuplicateStrategy, NotIncreasing, Tie };

  Kind kind;
  PlayerId player = 0;
  ResourceId resource = 0;
  std::uint32_t congestion = 0;
  // Second value of a tie (or the previous entry of a non-increasing table).
  ResourceId other_resource = 0;
  std::uint32_t other_congestion = 0;

  std::string describe() const;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return ok(); }
  std::string describe() const;
};

ValidationResult validate_game(const Game& game);

/// Builds and validates; throws InvalidGame listing the violations.
Game make_game(std::size_t resource_count, std::vector<PlayerSpec> players);

/// The unique best response of player i to `state`.
///
/// Throws TieViolation if two compared delays are equal, std::out_of_range for
/// an invalid player id.
ResourceId best_response(const Game& game, const State& state, PlayerId i);

bool is_satisfied(const Game& game, const State& state, PlayerId i);
std::vector<PlayerId> unsatisfied_players(const Game& game, const State& state);
bool is_nash(const Game& game, const State& state);

/// Replaces each player's delays by their 1-based ranks among all of that
/// player's delay values.
Game rank_reduce(const Game& game);

/// True if every player interested in a resource sees the same table for it.
bool has_common_delays(const Game& game);

}  // namespace brdyn
