#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "brdyn/game.hpp"

namespace brdyn {

enum class Policy { RandomUniform, RoundRobin, MinIndex, Scripted };

std::string_view to_string(Policy p);
Policy parse_policy(std::string_view s);

/// Rule choosing which unsatisfied player moves next.
///
/// A scripted schedule walks its sequence once; listed players without an
/// incentive to move are skipped and the run stops when the script ends.
struct Schedule {
  Policy policy = Policy::RandomUniform;
  std::vector<PlayerId> script;

  static Schedule random_uniform() { return {Policy::RandomUniform, {}}; }
  static Schedule round_robin() { return {Policy::RoundRobin, {}}; }
  static Schedule min_index() { return {Policy::MinIndex, {}}; }
  /// Throws std::invalid_argument on an empty sequence.
  static Schedule scripted(std::vector<PlayerId> sequence);
};

struct Move {
  PlayerId player;
  ResourceId from;
  ResourceId to;

  friend bool operator==(const Move&, const Move&) = default;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  bool terminated = false;  // reached a Nash equilibrium
  State final_state;
  std::optional<std::vector<Move>> trace;
};

struct RunOptions {
  std::uint64_t max_steps = 1'000'000'000;
  bool capture_trace = false;
};

/// Per-run random source. mt19937_64 is fully specified by the standard; the
/// bounded draw below is ours so results do not depend on the library's
/// distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Mutable simulation state with an incrementally maintained set of
/// unsatisfied players and their cached best responses.
class Engine {
 public:
  /// The game must outlive the engine.
  Engine(const Game& game, State initial);

  const State& state() const noexcept { return state_; }
  std::size_t unsatisfied_count() const noexcept { return unsat_.size(); }
  /// The k-th unsatisfied player in the engine's internal (deterministic) order.
  PlayerId unsatisfied_at(std::size_t k) const { return unsat_[k]; }
  bool is_unsatisfied(PlayerId i) const { return pos_[i] != kAbsent; }
  ResourceId target(PlayerId i) const { return target_[i]; }
  bool at_nash() const noexcept { return unsat_.empty(); }

  /// Smallest unsatisfied id, or the first one cyclically after `after`.
  std::optional<PlayerId> min_unsatisfied() const;
  std::optional<PlayerId> next_unsatisfied_after(PlayerId after) const;

  /// Plays i's best response. Returns the move; i must be unsatisfied.
  Move apply(PlayerId i);

 private:
  static constexpr std::size_t kAbsent = static_cast<std::size_t>(-1);
  void refresh(PlayerId i);

  const Game* game_;
  State state_;
  std::vector<ResourceId> target_;
  std::vector<PlayerId> unsat_;
  std::vector<std::size_t> pos_;
};

/// Runs best-response dynamics until a Nash equilibrium or the step cap.
/// Deterministic given (game, initial, schedule, seed, options).
RunRecord run(const Game& game, const State& initial, const Schedule& schedule,
              std::uint64_t seed, const RunOptions& options = {});

/// Applies each listed player's best response in order and returns every
/// intermediate state (moves.size() + 1 states). Throws ReplayError naming the
/// index of the first listed player that is already satisfied.
std::vector<State> replay_forced(const Game& game, const State& initial,
                                 const std::vector<PlayerId>& moves);

/// Trace as CSV rows `step,player,from,to` with a header line.
void write_trace_csv(std::ostream& os, const std::vector<Move>& trace);

/// Reconstructs the starting state of a traced run by undoing its moves.
State initial_state_of(const Game& game, const RunRecord& record);

}  // namespace brdyn
