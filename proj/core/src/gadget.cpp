#include "brdyn/gadget.hpp"

#include <bit>
#include <stdexcept>

#include "brdyn/dynamics.hpp"
#include "brdyn/errors.hpp"

namespace brdyn {

ResourceId GadgetGame::resource(std::size_t gadget, int j) const {
  if (gadget >= n || j < 0 || j > 3) throw std::out_of_range("gadget resource index");
  if (j == 3) return static_cast<ResourceId>(3 * ((gadget + 1) % n));
  return static_cast<ResourceId>(3 * gadget + static_cast<std::size_t>(j));
}

std::pair<int, int> GadgetGame::edge(int group) {
  static constexpr std::array<std::pair<int, int>, 5> kEdges{
      {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {0, 3}}};
  return kEdges.at(static_cast<std::size_t>(group));
}

PlayerId GadgetGame::player(std::size_t gadget, int group, std::size_t index) const {
  if (gadget >= n || group < 0 || group >= static_cast<int>(kGroups) || index >= n) {
    throw std::out_of_range("gadget player index");
  }
  return static_cast<PlayerId>(gadget * kGroups * n + static_cast<std::size_t>(group) * n + index);
}

GadgetGame build_gadget_game(std::size_t n) {
  if (n < 2) throw std::invalid_argument("gadget ring needs n >= 2");
  const long long ln = static_cast<long long>(n);
  const std::array<long long, 5> thresholds{3 * ln, ln - 1, 3 * ln - 2, ln - 1, 3 * ln - 1};
  const std::size_t total = GadgetGame::kGroups * n * n;

  std::array<std::pair<std::vector<Delay>, std::vector<Delay>>, 5> tables;
  for (std::size_t j = 0; j < GadgetGame::kGroups; ++j) tables[j] = threshold_delays(thresholds[j], total);

  auto resource = [n](std::size_t i, int j) {
    return static_cast<ResourceId>(j == 3 ? 3 * ((i + 1) % n) : 3 * i + static_cast<std::size_t>(j));
  };
  std::vector<PlayerSpec> players;
  std::vector<Edge> edges;
  players.reserve(total);
  edges.reserve(total);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = 0; j < 5; ++j) {
      const auto [a, b] = GadgetGame::edge(j);
      const Edge e{resource(i, a), resource(i, b)};
      for (std::size_t k = 0; k < n; ++k) {
        players.push_back({{e.zero, e.one}, {tables[j].first, tables[j].second}});
        edges.push_back(e);
      }
    }
  }
  GraphGame game{make_game(3 * n, std::move(players)), std::move(edges), Topology::General, {}, {}};
  return GadgetGame{n, std::move(game), thresholds};
}

std::vector<std::uint32_t> equilibrium_reference(const GadgetGame& g) {
  std::vector<std::uint32_t> ref(3 * g.n);
  const auto n = static_cast<std::uint32_t>(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    ref[3 * i] = 3 * n;
    ref[3 * i + 1] = n;
    ref[3 * i + 2] = n;
  }
  return ref;
}

std::vector<State> brute_force_equilibria(const GadgetGame& g, std::size_t state_cap) {
  const std::size_t players = g.player_count();
  if (players >= 63 || (std::size_t{1} << players) > state_cap) {
    throw CapExceeded("gadget ring with " + std::to_string(players) +
                      " players exceeds the state cap of " + std::to_string(state_cap));
  }
  const Game& game = g.game.base;
  State s = g.game.state_from_bits(std::vector<bool>(players, false));
  std::vector<State> found;
  const std::uint64_t count = std::uint64_t{1} << players;
  // Gray-code order: one player switches per step.
  for (std::uint64_t k = 0;; ++k) {
    bool nash = true;
    for (PlayerId i = 0; i < players && nash; ++i) nash = is_satisfied(game, s, i);
    if (nash) found.push_back(s);
    if (k + 1 == count) break;
    const auto flip = static_cast<PlayerId>(std::countr_zero(k + 1));
    const Edge& e = g.game.edges[flip];
    s.move(flip, s.choice(flip) == e.zero ? e.one : e.zero);
  }
  return found;
}

State initial_configuration(const GadgetGame& g) {
  if (g.n < 4 || g.n % 2 != 0) throw std::invalid_argument("initial configuration needs even n >= 4");
  const std::size_t half = g.n / 2;
  std::vector<bool> ones(g.player_count(), false);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t k = 0; k < g.n; ++k) {
      ones[g.player(i, 2, k)] = true;
      ones[g.player(i, 3, k)] = true;
    }
    const std::size_t up = i < half ? half : half + 2;
    for (std::size_t k = 0; k < up; ++k) ones[g.player(i, 4, k)] = true;
  }
  return g.game.state_from_bits(ones);
}

TokenMap place_equilibrium_tokens(const GadgetGame& g, const State& s) {
  TokenMap m;
  m.reference = equilibrium_reference(g);
  m.tokens.resize(m.reference.size());
  for (std::size_t r = 0; r < m.reference.size(); ++r) {
    m.tokens[r] = static_cast<int>(s.congestion(static_cast<ResourceId>(r))) -
                  static_cast<int>(m.reference[r]);
  }
  return m;
}

namespace {

struct Step {
  std::size_t gadget_offset;  // relative to the observed gadget
  int group;
  bool return_first;          // the first mover switches back
};

struct Expected {
  const char* label;
  std::array<int, 4> local;
};

ReplayPanel make_panel(const GadgetGame& g, std::size_t h, std::string label, State s) {
  ReplayPanel p{std::move(label), s, place_equilibrium_tokens(g, s), {}, {}};
  for (int j = 0; j < 4; ++j) p.local[j] = p.tokens.tokens[g.resource(h, j)];
  for (int j = 0; j < 5; ++j) {
    for (std::size_t k = 0; k < g.n; ++k) {
      const PlayerId q = g.player(h, j, k);
      p.zero_counts[j] += s.choice(q) == g.game.edges[q].zero ? 1 : 0;
    }
  }
  return p;
}

ReplayResult replay(const GadgetGame& g, std::size_t h, const std::array<Step, 6>& steps,
                    const std::array<Expected, 7>& expected) {
  const Game& game = g.game.base;
  ReplayResult res;
  res.gadget = h;
  State s = initial_configuration(g);
  res.panels.push_back(make_panel(g, h, expected[0].label, s));
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const Step& st = steps[k];
    std::optional<PlayerId> mover;
    if (st.return_first) {
      mover = res.moves.front();
    } else {
      const std::size_t gadget = (h + st.gadget_offset) % g.n;
      for (std::size_t idx = 0; idx < g.n && !mover; ++idx) {
        const PlayerId q = g.player(gadget, st.group, idx);
        if (!is_satisfied(game, s, q)) mover = q;
      }
      if (!mover) {
        throw ReplayError(k, "move " + std::to_string(k) + ": no unsatisfied player in group " +
                                 std::to_string(st.group) + " of gadget " +
                                 std::to_string(gadget));
      }
    }
    s = replay_forced(game, s, {*mover}).back();
    res.moves.push_back(*mover);
    res.panels.push_back(make_panel(g, h, expected[k + 1].label, s));
  }
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (res.panels[k].local != expected[k].local) {
      throw std::logic_error("panel " + std::string(expected[k].label) +
                             ": local tokens differ from the expected placement");
    }
  }
  return res;
}

}  // namespace

ReplayResult replay_overload_generation(const GadgetGame& g) {
  static constexpr std::array<Step, 6> kSteps{{
      {0, 0, false},
      {0, 1, false},
      {1, 4, false},
      {0, 4, false},
      {1, 4, false},
      {0, 0, true},
  }};
  static constexpr std::array<Expected, 7> kExpected{{
      {"A", {2, 0, 0, 0}},
      {"B", {1, 1, 0, 0}},
      {"C", {1, 0, 0, 1}},
      {"D", {1, 0, 0, 0}},
      {"E", {0, 0, 0, 1}},
      {"E'", {0, 0, 0, 0}},
      {"F", {1, -1, 0, 0}},
  }};
  return replay(g, 0, kSteps, kExpected);
}

ReplayResult replay_underload_generation(const GadgetGame& g) {
  static constexpr std::array<Step, 6> kSteps{{
      {0, 2, false},
      {0, 3, false},
      {1, 4, false},
      {0, 4, false},
      {1, 4, false},
      {0, 0, true},
  }};
  static constexpr std::array<Expected, 7> kExpected{{
      {"A", {-2, 0, 0, 0}},
      {"B", {-1, 0, -1, 0}},
      {"C", {-1, 0, 0, -1}},
      {"D", {-1, 0, 0, 0}},
      {"E", {0, 0, 0, -1}},
      {"E'", {0, 0, 0, 0}},
      {"F", {-1, 0, 1, 0}},
  }};
  if (g.n < 4 || g.n % 2 != 0) throw std::invalid_argument("replay needs even n >= 4");
  return replay(g, g.n / 2, kSteps, kExpected);
}

}  // namespace brdyn
