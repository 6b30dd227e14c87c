#include "brdyn/generators.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "brdyn/errors.hpp"

namespace brdyn {

namespace {

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

std::vector<std::vector<Delay>> random_tables(std::size_t strategies, std::size_t n, Rng& rng) {
  std::vector<Delay> values(strategies * n);
  std::iota(values.begin(), values.end(), Delay{1});
  shuffle(values, rng);
  std::vector<std::vector<Delay>> tables(strategies);
  for (std::size_t s = 0; s < strategies; ++s) {
    tables[s].assign(values.begin() + static_cast<std::ptrdiff_t>(s * n),
                     values.begin() + static_cast<std::ptrdiff_t>((s + 1) * n));
    std::sort(tables[s].begin(), tables[s].end());
  }
  return tables;
}

Game random_game(std::size_t players, std::size_t resources, std::size_t max_strategies, Rng& rng) {
  if (players == 0 || resources == 0 || max_strategies == 0) {
    throw std::invalid_argument("random_game needs players, resources and strategies");
  }
  std::vector<ResourceId> all(resources);
  std::iota(all.begin(), all.end(), ResourceId{0});
  std::vector<PlayerSpec> specs;
  for (std::size_t i = 0; i < players; ++i) {
    const std::size_t k = 1 + rng.below(std::min(max_strategies, resources));
    shuffle(all, rng);
    PlayerSpec spec{{all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k)}, {}};
    std::sort(spec.strategies.begin(), spec.strategies.end());
    spec.delays = random_tables(k, players, rng);
    specs.push_back(std::move(spec));
  }
  return make_game(resources, std::move(specs));
}

GraphGame random_tree_game(std::size_t resources, Rng& rng) {
  if (resources < 2) throw std::invalid_argument("a tree game needs at least two resources");
  const std::size_t n = resources - 1;
  std::vector<PlayerSpec> specs;
  for (std::size_t v = 1; v < resources; ++v) {
    const auto parent = static_cast<ResourceId>(rng.below(v));
    specs.push_back({{parent, static_cast<ResourceId>(v)}, random_tables(2, n, rng)});
  }
  return as_graph_game(make_game(resources, std::move(specs)));
}

GraphGame make_circle_game(const std::vector<PlayerType>& types, Rng& rng) {
  const std::size_t n = types.size();
  if (n < 2) throw std::invalid_argument("a circle needs at least two players");
  std::vector<PlayerSpec> specs;
  for (std::size_t p = 0; p < n; ++p) {
    // Increasing random values; the first four are arranged by the type ordering.
    std::vector<Delay> values(2 * n);
    Delay v = 0;
    for (auto& x : values) x = v += 1 + rng.below(8);
    std::array<Delay, 4> first{};
    const auto order = type_ordering(types[p]);
    for (std::size_t rank = 0; rank < 4; ++rank) first[static_cast<std::size_t>(order[rank])] = values[rank];
    std::vector<Delay> zero(n), one(n);
    zero[0] = first[0];
    one[0] = first[2];
    if (n >= 2) {
      zero[1] = first[1];
      one[1] = first[3];
    }
    for (std::size_t k = 2; k < n; ++k) {
      zero[k] = values[2 * k];
      one[k] = values[2 * k + 1];
    }
    const auto a = static_cast<ResourceId>(p);
    const auto b = static_cast<ResourceId>((p + 1) % n);
    specs.push_back({{a, b}, {std::move(zero), std::move(one)}});
  }
  GraphGame g = as_graph_game(make_game(n, std::move(specs)));
  for (std::size_t p = 0; p < n; ++p) {
    if (g.ring_players[p] != p || g.ring_resources[p] != p ||
        classify_player_type(g, static_cast<PlayerId>(p)) != types[p]) {
      throw std::logic_error("circle orientation does not match the requested types");
    }
  }
  return g;
}

State random_state(const Game& game, Rng& rng) {
  std::vector<ResourceId> choice(game.player_count());
  for (PlayerId i = 0; i < game.player_count(); ++i) {
    const auto s = game.strategies(i);
    choice[i] = s[rng.below(s.size())];
  }
  return State(game, std::move(choice));
}

}  // namespace brdyn
