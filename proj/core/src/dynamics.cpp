#include "brdyn/dynamics.hpp"

#include <cassert>
#include <ostream>
#include <stdexcept>
#include <string>

#include "brdyn/errors.hpp"

namespace brdyn {

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::RandomUniform:
      return "random";
    case Policy::RoundRobin:
      return "round-robin";
    case Policy::MinIndex:
      return "min-index";
    case Policy::Scripted:
      return "scripted";
  }
  return "?";
}

Policy parse_policy(std::string_view s) {
  if (s == "random" || s == "random-uniform") return Policy::RandomUniform;
  if (s == "round-robin") return Policy::RoundRobin;
  if (s == "min-index") return Policy::MinIndex;
  if (s == "scripted") return Policy::Scripted;
  throw std::invalid_argument("unknown schedule '" + std::string(s) + "'");
}

Schedule Schedule::scripted(std::vector<PlayerId> sequence) {
  if (sequence.empty()) throw std::invalid_argument("scripted schedule needs at least one entry");
  return {Policy::Scripted, std::move(sequence)};
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
  // Rejection sampling on the top of the 64-bit range.
  const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % bound);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

Engine::Engine(const Game& game, State initial)
    : game_(&game),
      state_(std::move(initial)),
      target_(game.player_count()),
      pos_(game.player_count(), kAbsent) {
  for (PlayerId i = 0; i < game.player_count(); ++i) refresh(i);
}

void Engine::refresh(PlayerId i) {
  const ResourceId br = best_response(*game_, state_, i);
  target_[i] = br;
  const bool unsat = br != state_.choice(i);
  if (unsat && pos_[i] == kAbsent) {
    pos_[i] = unsat_.size();
    unsat_.push_back(i);
  } else if (!unsat && pos_[i] != kAbsent) {
    const PlayerId last = unsat_.back();
    unsat_[pos_[i]] = last;
    pos_[last] = pos_[i];
    unsat_.pop_back();
    pos_[i] = kAbsent;
  }
}

std::optional<PlayerId> Engine::min_unsatisfied() const {
  for (PlayerId i = 0; i < pos_.size(); ++i) {
    if (pos_[i] != kAbsent) return i;
  }
  return std::nullopt;
}

std::optional<PlayerId> Engine::next_unsatisfied_after(PlayerId after) const {
  const std::size_t n = pos_.size();
  for (std::size_t k = 1; k <= n; ++k) {
    const PlayerId i = static_cast<PlayerId>((after + k) % n);
    if (pos_[i] != kAbsent) return i;
  }
  return std::nullopt;
}

Move Engine::apply(PlayerId i) {
  if (!is_unsatisfied(i)) throw std::logic_error("Engine::apply on a satisfied player");
  const Move mv{i, state_.choice(i), target_[i]};
  state_.move(i, mv.to);
  for (ResourceId r : {mv.from, mv.to}) {
    for (PlayerId q : game_->interested(r)) refresh(q);
  }
#ifndef NDEBUG
  assert(state_.congestions() == recount(*game_, state_.choices()));
#endif
  return mv;
}

RunRecord run(const Game& game, const State& initial, const Schedule& schedule,
              std::uint64_t seed, const RunOptions& options) {
  Engine engine(game, initial);
  Rng rng(seed);
  RunRecord rec{seed, 0, false, initial, std::nullopt};
  if (options.capture_trace) rec.trace.emplace();

  // Round-robin resumes after the last mover; before any move that is player 0.
  PlayerId last = 0;
  std::size_t script_pos = 0;
  auto pick = [&]() -> std::optional<PlayerId> {
    switch (schedule.policy) {
      case Policy::RandomUniform:
        return engine.unsatisfied_at(rng.below(engine.unsatisfied_count()));
      case Policy::RoundRobin:
        return engine.next_unsatisfied_after(last);
      case Policy::MinIndex:
        return engine.min_unsatisfied();
      case Policy::Scripted:
        while (script_pos < schedule.script.size()) {
          const PlayerId i = schedule.script[script_pos++];
          if (i < game.player_count() && engine.is_unsatisfied(i)) return i;
        }
        return std::nullopt;
    }
    return std::nullopt;
  };

  while (!engine.at_nash() && rec.steps < options.max_steps) {
    const auto next = pick();
    if (!next) break;
    const Move mv = engine.apply(*next);
    last = *next;
    ++rec.steps;
    if (rec.trace) rec.trace->push_back(mv);
  }
  rec.terminated = engine.at_nash();
  rec.final_state = engine.state();
  return rec;
}

std::vector<State> replay_forced(const Game& game, const State& initial,
                                 const std::vector<PlayerId>& moves) {
  std::vector<State> states{initial};
  states.reserve(moves.size() + 1);
  State s = initial;
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const PlayerId i = moves[k];
    if (i >= game.player_count()) {
      throw ReplayError(k, "move " + std::to_string(k) + ": player id " + std::to_string(i) +
                               " out of range");
    }
    const ResourceId br = best_response(game, s, i);
    if (br == s.choice(i)) {
      throw ReplayError(k, "move " + std::to_string(k) + ": player " + std::to_string(i) +
                               " has no incentive to move");
    }
    s.move(i, br);
    states.push_back(s);
  }
  return states;
}

void write_trace_csv(std::ostream& os, const std::vector<Move>& trace) {
  os << "step,player,from,to\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    os << k + 1 << ',' << trace[k].player << ',' << trace[k].from << ',' << trace[k].to << '\n';
  }
}

State initial_state_of(const Game& game, const RunRecord& record) {
  if (!record.trace) throw std::invalid_argument("run record carries no trace");
  std::vector<ResourceId> choice = record.final_state.choices();
  for (auto it = record.trace->rbegin(); it != record.trace->rend(); ++it) {
    choice.at(it->player) = it->from;
  }
  return State(game, std::move(choice));
}

}  // namespace brdyn
