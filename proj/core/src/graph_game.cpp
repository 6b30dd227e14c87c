#include "brdyn/graph_game.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>

#include "brdyn/errors.hpp"

namespace brdyn {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::Tree:
      return "tree";
    case Topology::Circle:
      return "circle";
    case Topology::General:
      return "general-multigraph";
  }
  return "?";
}

Topology parse_topology(std::string_view s) {
  if (s == "tree") return Topology::Tree;
  if (s == "circle") return Topology::Circle;
  if (s == "general" || s == "general-multigraph") return Topology::General;
  throw std::invalid_argument("unknown topology '" + std::string(s) + "'");
}

State GraphGame::state_from_bits(const std::vector<bool>& ones) const {
  std::vector<ResourceId> choice(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) choice[i] = ones.at(i) ? edges[i].one : edges[i].zero;
  return State(base, std::move(choice));
}

namespace {

bool bfs_connected(const Game& game) {
  const std::size_t m = game.resource_count();
  std::vector<char> seen(m, 0);
  std::queue<ResourceId> q;
  q.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    ResourceId r = q.front();
    q.pop();
    for (PlayerId i : game.interested(r)) {
      for (ResourceId s : game.strategies(i)) {
        if (!seen[s]) {
          seen[s] = 1;
          ++reached;
          q.push(s);
        }
      }
    }
  }
  return reached == m;
}

}  // namespace

GraphGame as_graph_game(Game game) {
  const std::size_t n = game.player_count();
  const std::size_t m = game.resource_count();
  std::vector<Edge> edges(n);
  std::vector<std::size_t> degree(m, 0);
  for (PlayerId i = 0; i < n; ++i) {
    auto s = game.strategies(i);
    if (s.size() != 2) {
      throw InvalidGame("player " + std::to_string(i) + " has " + std::to_string(s.size()) +
                        " strategies; graph games need exactly 2");
    }
    edges[i] = {std::min(s[0], s[1]), std::max(s[0], s[1])};
    ++degree[s[0]];
    ++degree[s[1]];
  }

  Topology topo = Topology::General;
  const bool connected = bfs_connected(game);
  if (connected && n + 1 == m) {
    topo = Topology::Tree;
  } else if (connected && n == m &&
             std::all_of(degree.begin(), degree.end(), [](std::size_t d) { return d == 2; })) {
    topo = Topology::Circle;
  }

  GraphGame out{std::move(game), std::move(edges), topo, {}, {}};
  if (topo == Topology::Circle) {
    PlayerId player = 0;
    ResourceId at = out.edges[0].zero;
    for (std::size_t p = 0; p < n; ++p) {
      out.ring_players.push_back(player);
      out.ring_resources.push_back(at);
      auto s = out.base.strategies(player);
      ResourceId next = s[0] == at ? s[1] : s[0];
      out.edges[player] = {at, next};
      // Continue with the other player incident to `next`.
      auto inc = out.base.interested(next);
      player = inc[0] == player ? inc[1] : inc[0];
      at = next;
    }
  }
  return out;
}

DegreeCensus degree_census(const Game& game) {
  const std::size_t m = game.resource_count();
  DegreeCensus c;
  c.degree.assign(m, 0);
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (PlayerId i = 0; i < game.player_count(); ++i) {
    auto s = game.strategies(i);
    for (ResourceId r : s) ++c.degree[r];
    for (std::size_t k = 1; k < s.size(); ++k) parent[find(s[k])] = find(s[0]);
  }
  std::size_t roots = 0;
  for (std::size_t r = 0; r < m; ++r) roots += find(r) == r;
  c.connected = roots == 1;
  return c;
}

std::string_view to_string(PlayerType t) {
  switch (t) {
    case PlayerType::T1:
      return "1";
    case PlayerType::T2:
      return "2";
    case PlayerType::T3:
      return "3";
    case PlayerType::T1p:
      return "1'";
    case PlayerType::T2p:
      return "2'";
    case PlayerType::T3p:
      return "3'";
  }
  return "?";
}

PlayerType parse_player_type(std::string_view s) {
  if (s == "1") return PlayerType::T1;
  if (s == "2") return PlayerType::T2;
  if (s == "3") return PlayerType::T3;
  if (s == "1'" || s == "1p") return PlayerType::T1p;
  if (s == "2'" || s == "2p") return PlayerType::T2p;
  if (s == "3'" || s == "3p") return PlayerType::T3p;
  throw std::invalid_argument("unknown player type '" + std::string(s) + "'");
}

std::array<int, 4> type_ordering(PlayerType t) {
  switch (t) {
    case PlayerType::T1:
      return {0, 1, 2, 3};
    case PlayerType::T2:
      return {0, 2, 1, 3};
    case PlayerType::T3:
      return {0, 2, 3, 1};
    case PlayerType::T1p:
      return {2, 3, 0, 1};
    case PlayerType::T2p:
      return {2, 0, 3, 1};
    case PlayerType::T3p:
      return {2, 0, 1, 3};
  }
  return {};
}

PlayerType classify_player_type(const GraphGame& game, PlayerId player) {
  const Edge e = game.edges.at(player);
  const Game& g = game.base;
  if (g.player_count() < 2) throw InvalidGame("player types need congestion 2");
  const std::array<Delay, 4> v{g.delay(player, e.zero, 1), g.delay(player, e.zero, 2),
                               g.delay(player, e.one, 1), g.delay(player, e.one, 2)};
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
  for (std::size_t k = 1; k < 4; ++k) {
    if (v[order[k - 1]] == v[order[k]]) {
      throw InvalidGame("player " + std::to_string(player) + " has tied delay values");
    }
  }
  for (PlayerType t : {PlayerType::T1, PlayerType::T2, PlayerType::T3, PlayerType::T1p,
                       PlayerType::T2p, PlayerType::T3p}) {
    if (type_ordering(t) == order) return t;
  }
  throw InvalidGame("player " + std::to_string(player) + ": delay ordering matches no type");
}

namespace {

__extension__ using Wide = unsigned __int128;

unsigned bit_width_u128(Wide v) {
  unsigned bits = 0;
  while (v != 0) {
    ++bits;
    v >>= 1;
  }
  return bits;
}

[[noreturn]] void overflow(Wide needed) {
  throw std::overflow_error("common delay construction needs " +
                            std::to_string(bit_width_u128(needed)) +
                            " bits, exceeds the 64-bit delay range");
}

Delay checked_mul(Delay a, Delay b) {
  Delay out;
  if (__builtin_mul_overflow(a, b, &out)) overflow(static_cast<Wide>(a) * b);
  return out;
}

Delay checked_add(Delay a, Delay b) {
  Delay out;
  if (__builtin_add_overflow(a, b, &out)) overflow(static_cast<Wide>(a) + b);
  return out;
}

// Places the new resource's table so that, against `known`, every value keeps
// the same number of smaller entries as the player's own tables dictate.
// Returns nullopt if some gap of `known` is too narrow.
std::optional<std::vector<Delay>> place_table(const std::vector<Delay>& known,
                                              std::span<const Delay> own_known,
                                              std::span<const Delay> own_new) {
  const std::size_t n = known.size();
  std::vector<std::size_t> below(n);
  for (std::size_t k = 0; k < n; ++k) {
    below[k] = static_cast<std::size_t>(
        std::lower_bound(own_known.begin(), own_known.end(), own_new[k]) - own_known.begin());
  }
  std::vector<Delay> out(n);
  std::size_t k = 0;
  while (k < n) {
    const std::size_t gap = below[k];
    std::size_t end = k;
    while (end < n && below[end] == gap) ++end;
    const Delay cnt = end - k;
    const Delay lo = gap == 0 ? 0 : known[gap - 1];
    if (gap == n) {
      for (std::size_t j = k; j < end; ++j) out[j] = checked_add(lo, checked_mul(n + 1, j - k + 1));
    } else {
      const Delay hi = known[gap];
      const Delay step = (hi - lo) / (cnt + 1);
      if (step == 0) return std::nullopt;
      for (std::size_t j = k; j < end; ++j) out[j] = lo + step * (j - k + 1);
    }
    k = end;
  }
  return out;
}

}  // namespace

Game tree_to_standard(const GraphGame& tree) {
  if (tree.topology != Topology::Tree) throw InvalidGame("tree_to_standard needs a tree game");
  const Game& g = tree.base;
  const std::size_t n = g.player_count();
  const std::size_t m = g.resource_count();

  std::vector<std::optional<std::vector<Delay>>> common(m);
  std::vector<Delay> root(n);
  std::iota(root.begin(), root.end(), Delay{1});
  common[0] = root;

  std::vector<char> placed(n, 0);
  std::queue<ResourceId> frontier;
  frontier.push(0);
  while (!frontier.empty()) {
    const ResourceId r = frontier.front();
    frontier.pop();
    for (PlayerId i : g.interested(r)) {
      if (placed[i]) continue;
      placed[i] = 1;
      const auto strat = g.strategies(i);
      const std::size_t slot_known = strat[0] == r ? 0 : 1;
      const ResourceId fresh = strat[1 - slot_known];
      auto table = place_table(*common[r], g.table(i, slot_known), g.table(i, 1 - slot_known));
      if (!table) {
        // Widen every gap to at least n + 1 and retry; this always fits.
        for (auto& t : common) {
          if (!t) continue;
          for (auto& v : *t) v = checked_mul(v, n + 1);
        }
        table = place_table(*common[r], g.table(i, slot_known), g.table(i, 1 - slot_known));
        if (!table) throw std::logic_error("tree_to_standard: placement failed after rescale");
      }
      common[fresh] = std::move(*table);
      frontier.push(fresh);
    }
  }

  std::vector<PlayerSpec> players;
  players.reserve(n);
  for (PlayerId i = 0; i < n; ++i) {
    PlayerSpec p;
    for (ResourceId r : g.strategies(i)) {
      p.strategies.push_back(r);
      p.delays.push_back(*common[r]);
    }
    players.push_back(std::move(p));
  }
  return Game(m, std::move(players));
}

std::pair<std::vector<Delay>, std::vector<Delay>> threshold_delays(long long t,
                                                                   std::size_t total_players) {
  if (total_players == 0) throw std::invalid_argument("threshold_delays: no players");
  if (t < 0 || static_cast<std::size_t>(t) > total_players) {
    throw std::out_of_range("threshold " + std::to_string(t) + " outside [0, " +
                            std::to_string(total_players) + "]");
  }
  const Delay N = total_players;
  const Delay th = static_cast<Delay>(t);
  std::vector<Delay> zero(N), one(N);
  // Even values on the 0-resource jump past every odd 1-resource value once
  // the congestion exceeds t + 1.
  for (Delay k = 1; k <= N; ++k) {
    zero[k - 1] = k <= th + 1 ? 2 * k : 2 * (N + k);
    one[k - 1] = 2 * (th + 1) + 2 * k - 1;
  }
  return {std::move(zero), std::move(one)};
}

}  // namespace brdyn
