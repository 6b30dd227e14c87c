#include "brdyn/game.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "brdyn/errors.hpp"

namespace brdyn {

Game::Game(std::size_t resource_count, std::vector<PlayerSpec> players)
    : resource_count_(resource_count) {
  if (players.empty()) throw std::invalid_argument("game needs at least one player");
  if (resource_count == 0) throw std::invalid_argument("game needs at least one resource");
  const std::size_t n = players.size();
  strategy_offset_.reserve(n + 1);
  strategy_offset_.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& p = players[i];
    if (p.delays.size() != p.strategies.size()) {
      throw std::invalid_argument("player " + std::to_string(i) + ": " +
                                  std::to_string(p.strategies.size()) + " strategies but " +
                                  std::to_string(p.delays.size()) + " delay tables");
    }
    for (std::size_t s = 0; s < p.strategies.size(); ++s) {
      if (p.delays[s].size() != n) {
        throw std::invalid_argument("player " + std::to_string(i) + ": delay table for resource " +
                                    std::to_string(p.strategies[s]) + " has " +
                                    std::to_string(p.delays[s].size()) + " entries, expected " +
                                    std::to_string(n));
      }
      strategies_.push_back(p.strategies[s]);
      delays_.insert(delays_.end(), p.delays[s].begin(), p.delays[s].end());
    }
    strategy_offset_.push_back(strategies_.size());
  }

  std::vector<std::size_t> count(resource_count + 1, 0);
  for (PlayerId i = 0; i < n; ++i) {
    for (ResourceId r : strategies(i)) {
      if (r < resource_count) ++count[r + 1];
    }
  }
  for (std::size_t r = 0; r < resource_count; ++r) count[r + 1] += count[r];
  interested_offset_ = count;
  interested_.resize(count.back());
  for (PlayerId i = 0; i < n; ++i) {
    for (ResourceId r : strategies(i)) {
      if (r < resource_count) interested_[count[r]++] = i;
    }
  }
}

void Game::check_player(PlayerId i) const {
  if (i >= player_count()) {
    throw std::out_of_range("player id " + std::to_string(i) + " out of range [0, " +
                            std::to_string(player_count()) + ")");
  }
}

std::span<const ResourceId> Game::strategies(PlayerId i) const {
  check_player(i);
  return {strategies_.data() + strategy_offset_[i], strategy_offset_[i + 1] - strategy_offset_[i]};
}

std::size_t Game::strategy_count(PlayerId i) const {
  check_player(i);
  return strategy_offset_[i + 1] - strategy_offset_[i];
}

std::optional<std::size_t> Game::slot_of(PlayerId i, ResourceId r) const {
  auto s = strategies(i);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == r) return k;
  }
  return std::nullopt;
}

std::span<const Delay> Game::table(PlayerId i, std::size_t slot) const {
  if (slot >= strategy_count(i)) throw std::out_of_range("strategy slot out of range");
  const std::size_t n = player_count();
  return {delays_.data() + (strategy_offset_[i] + slot) * n, n};
}

Delay Game::delay(PlayerId i, ResourceId r, std::uint32_t congestion) const {
  auto slot = slot_of(i, r);
  if (!slot) {
    throw std::out_of_range("resource " + std::to_string(r) + " is not a strategy of player " +
                            std::to_string(i));
  }
  if (congestion < 1 || congestion > player_count()) {
    throw std::out_of_range("congestion " + std::to_string(congestion) + " out of range");
  }
  return table(i, *slot)[congestion - 1];
}

std::span<const PlayerId> Game::interested(ResourceId r) const {
  if (r >= resource_count_) throw std::out_of_range("resource id out of range");
  return {interested_.data() + interested_offset_[r],
          interested_offset_[r + 1] - interested_offset_[r]};
}

PlayerSpec Game::player(PlayerId i) const {
  PlayerSpec p;
  auto s = strategies(i);
  p.strategies.assign(s.begin(), s.end());
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto t = table(i, k);
    p.delays.emplace_back(t.begin(), t.end());
  }
  return p;
}

bool operator==(const Game& a, const Game& b) {
  return a.resource_count_ == b.resource_count_ && a.strategy_offset_ == b.strategy_offset_ &&
         a.strategies_ == b.strategies_ && a.delays_ == b.delays_;
}

std::vector<std::uint32_t> recount(const Game& game, const std::vector<ResourceId>& choice) {
  std::vector<std::uint32_t> c(game.resource_count(), 0);
  for (ResourceId r : choice) ++c.at(r);
  return c;
}

State::State(const Game& game, std::vector<ResourceId> choice) : choice_(std::move(choice)) {
  if (choice_.size() != game.player_count()) {
    throw std::invalid_argument("state has " + std::to_string(choice_.size()) +
                                " choices for " + std::to_string(game.player_count()) +
                                " players");
  }
  for (PlayerId i = 0; i < choice_.size(); ++i) {
    if (!game.slot_of(i, choice_[i]) || choice_[i] >= game.resource_count()) {
      throw std::invalid_argument("player " + std::to_string(i) + " cannot choose resource " +
                                  std::to_string(choice_[i]));
    }
  }
  congestion_ = recount(game, choice_);
}

void State::move(PlayerId i, ResourceId to) {
  ResourceId& from = choice_.at(i);
  --congestion_[from];
  ++congestion_.at(to);
  from = to;
}

std::string Violation::describe() const {
  std::ostringstream os;
  os << "player " << player << ": ";
  switch (kind) {
    case Kind::EmptyStrategySet:
      os << "empty strategy set";
      break;
    case Kind::ResourceOutOfRange:
      os << "strategy references resource " << resource << " outside the game";
      break;
    case Kind::DuplicateStrategy:
      os << "resource " << resource << " listed twice";
      break;
    case Kind::NotIncreasing:
      os << "delay on resource " << resource << " not strictly increasing at congestion "
         << congestion;
      break;
    case Kind::Tie:
      os << "tie between d_" << resource << "(" << congestion << ") and d_" << other_resource
         << "(" << other_congestion << ")";
      break;
  }
  return os.str();
}

std::string ValidationResult::describe() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.describe();
  }
  return out;
}

ValidationResult validate_game(const Game& game) {
  ValidationResult result;
  const std::size_t n = game.player_count();
  for (PlayerId i = 0; i < n; ++i) {
    auto strat = game.strategies(i);
    if (strat.empty()) {
      result.violations.push_back({Violation::Kind::EmptyStrategySet, i});
      continue;
    }
    std::vector<ResourceId> seen;
    for (ResourceId r : strat) {
      if (r >= game.resource_count()) {
        result.violations.push_back({Violation::Kind::ResourceOutOfRange, i, r});
      }
      if (std::find(seen.begin(), seen.end(), r) != seen.end()) {
        result.violations.push_back({Violation::Kind::DuplicateStrategy, i, r});
      }
      seen.push_back(r);
    }

    // (value, resource, congestion)
    std::vector<std::tuple<Delay, ResourceId, std::uint32_t>> values;
    for (std::size_t s = 0; s < strat.size(); ++s) {
      auto t = game.table(i, s);
      for (std::uint32_t k = 0; k < n; ++k) {
        if (k > 0 && t[k] <= t[k - 1]) {
          result.violations.push_back(
              {Violation::Kind::NotIncreasing, i, strat[s], k + 1, strat[s], k});
        }
        values.emplace_back(t[k], strat[s], k + 1);
      }
    }
    std::sort(values.begin(), values.end());
    for (std::size_t k = 1; k < values.size(); ++k) {
      const auto& [va, ra, ca] = values[k - 1];
      const auto& [vb, rb, cb] = values[k];
      // Equal values on one resource are already reported as NotIncreasing.
      if (va == vb && ra != rb) {
        result.violations.push_back({Violation::Kind::Tie, i, ra, ca, rb, cb});
      }
    }
  }
  return result;
}

Game make_game(std::size_t resource_count, std::vector<PlayerSpec> players) {
  Game g(resource_count, std::move(players));
  auto v = validate_game(g);
  if (!v) throw InvalidGame(v.describe());
  return g;
}

ResourceId best_response(const Game& game, const State& state, PlayerId i) {
  auto strat = game.strategies(i);
  const ResourceId current = state.choice(i);
  const std::size_t cur_slot = *game.slot_of(i, current);
  const Delay stay = game.table(i, cur_slot)[state.congestion(current) - 1];

  ResourceId best = current;
  Delay best_value = stay;
  for (std::size_t s = 0; s < strat.size(); ++s) {
    if (s == cur_slot) continue;
    const Delay v = game.table(i, s)[state.congestion(strat[s])];  // d(n_r + 1)
    if (v == best_value) {
      throw TieViolation("player " + std::to_string(i) + ": equal delays " + std::to_string(v) +
                         " on resources " + std::to_string(best) + " and " +
                         std::to_string(strat[s]));
    }
    if (v < best_value) {
      best_value = v;
      best = strat[s];
    }
  }
  return best;
}

bool is_satisfied(const Game& game, const State& state, PlayerId i) {
  return best_response(game, state, i) == state.choice(i);
}

std::vector<PlayerId> unsatisfied_players(const Game& game, const State& state) {
  std::vector<PlayerId> out;
  for (PlayerId i = 0; i < game.player_count(); ++i) {
    if (!is_satisfied(game, state, i)) out.push_back(i);
  }
  return out;
}

bool is_nash(const Game& game, const State& state) {
  return unsatisfied_players(game, state).empty();
}

Game rank_reduce(const Game& game) {
  const std::size_t n = game.player_count();
  std::vector<PlayerSpec> players;
  players.reserve(n);
  for (PlayerId i = 0; i < n; ++i) {
    PlayerSpec p = game.player(i);
    std::vector<Delay> all;
    for (const auto& t : p.delays) all.insert(all.end(), t.begin(), t.end());
    std::sort(all.begin(), all.end());
    for (auto& t : p.delays) {
      for (auto& v : t) {
        v = static_cast<Delay>(std::lower_bound(all.begin(), all.end(), v) - all.begin()) + 1;
      }
    }
    players.push_back(std::move(p));
  }
  return Game(game.resource_count(), std::move(players));
}

bool has_common_delays(const Game& game) {
  for (ResourceId r = 0; r < game.resource_count(); ++r) {
    auto players = game.interested(r);
    if (players.empty()) continue;
    auto ref = game.table(players[0], *game.slot_of(players[0], r));
    for (PlayerId i : players.subspan(1)) {
      auto t = game.table(i, *game.slot_of(i, r));
      if (!std::equal(ref.begin(), ref.end(), t.begin(), t.end())) return false;
    }
  }
  return true;
}

}  // namespace brdyn
