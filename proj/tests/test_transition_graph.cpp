#include <doctest.h>

#include <algorithm>
#include <functional>
#include <stdexcept>

#include <set>
#include <sstream>

#include <brdyn/circle.hpp>
#include <brdyn/dynamics.hpp>
#include <brdyn/errors.hpp>
#include <brdyn/generators.hpp>
#include <brdyn/transition_graph.hpp>

#include "oracles.hpp"

using namespace brdyn;

namespace {

oracle::EdgeSet decoded_edges(const Game& g, const TransitionGraph& tg) {
  oracle::EdgeSet out;
  for (NodeId v = 0; v < tg.node_count(); ++v) {
    for (const TgEdge& e : tg.out_edges(v)) {
      out.emplace(tg.decode(g, e.from).choices(), e.player, tg.decode(g, e.to).choices());
    }
  }
  return out;
}

GraphGame all_type(std::size_t n, PlayerType t, std::uint64_t seed = 1) {
  Rng rng(seed);
  return make_circle_game(std::vector<PlayerType>(n, t), rng);
}

}  // namespace

TEST_CASE("one player, two resources") {
  const Game g = make_game(2, {{{0, 1}, {{1}, {2}}}});
  const TransitionGraph tg = build_tg(g);
  CHECK(tg.node_count() == 2);
  CHECK(tg.edge_count() == 1);
  CHECK(longest_path(tg) == 1);
  CHECK(is_acyclic(tg));
  CHECK_FALSE(find_cycle(tg));
}

TEST_CASE("all-type-3 circle n=3 has 8 nodes and the two synchronized sinks") {
  const GraphGame c = all_type(3, PlayerType::T3);
  const TransitionGraph tg = build_tg(c.base);
  CHECK(tg.node_count() == 8);
  const auto sinks = tg.sinks();
  REQUIRE(sinks.size() == 2);
  std::set<NodeId> expected{tg.encode(c.base, c.state_from_bits({0, 0, 0})),
                            tg.encode(c.base, c.state_from_bits({1, 1, 1}))};
  CHECK(std::set<NodeId>(sinks.begin(), sinks.end()) == expected);
}

TEST_CASE("node cap") {
  const GraphGame c = all_type(6, PlayerType::T3);
  CHECK_THROWS_AS(build_tg(c.base, 63), CapExceeded);
  CHECK_NOTHROW(build_tg(c.base, 64));
}

TEST_CASE("property: edges match the oracle, out-degree and sinks are consistent") {
  Rng rng(2);
  for (int trial = 0; trial < 80; ++trial) {
    const Game g = random_game(1 + rng.below(5), 1 + rng.below(4), 3, rng);
    const TransitionGraph tg = build_tg(g, kDefaultNodeCap, 1 + static_cast<unsigned>(rng.below(3)));
    CHECK(decoded_edges(g, tg) == oracle::transition_edges(g));
    CHECK(tg == build_tg(g, kDefaultNodeCap, 1));
    for (NodeId v = 0; v < tg.node_count(); ++v) {
      const State s = tg.decode(g, v);
      CHECK(tg.encode(g, s) == v);
      CHECK(tg.out_degree(v) == unsatisfied_players(g, s).size());
    }
    for (NodeId v : tg.sinks()) CHECK(is_nash(g, tg.decode(g, v)));
    const auto adj = oracle::adjacency(g);
    const bool cyclic = oracle::has_cycle(adj);
    CHECK(find_cycle(tg).has_value() == cyclic);
    CHECK(is_acyclic(tg) == !cyclic);
    if (!cyclic) CHECK(longest_path(tg) == oracle::longest_path(adj));
    else CHECK_THROWS_AS(longest_path(tg), CycleFound);
  }
}

TEST_CASE("property: edges agree with scripted single moves") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Game g = random_game(2 + rng.below(4), 2 + rng.below(3), 3, rng);
    const TransitionGraph tg = build_tg(g);
    for (NodeId v = 0; v < tg.node_count(); ++v) {
      for (const TgEdge& e : tg.out_edges(v)) {
        const RunRecord r = run(g, tg.decode(g, v), Schedule::scripted({e.player}), 0, {1, false});
        CHECK(tg.encode(g, r.final_state) == e.to);
      }
    }
  }
}

TEST_CASE("property: longest_path bounds every run on acyclic games") {
  Rng rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const GraphGame tree = random_tree_game(2 + rng.below(6), rng);
    const TransitionGraph tg = build_tg(tree.base);
    const std::uint64_t lp = longest_path(tg);
    for (int k = 0; k < 20; ++k) {
      const RunRecord r = run(tree.base, random_state(tree.base, rng), Schedule::random_uniform(), k);
      CHECK(r.steps <= lp);
    }
  }
}

TEST_CASE("all-type-3 circles cycle and every cycle moves every player twice") {
  for (std::size_t n : {3, 4, 5}) {
    const GraphGame c = all_type(n, PlayerType::T3);
    const TransitionGraph tg = build_tg(c.base);
    const auto cyc = find_cycle(tg);
    REQUIRE(cyc);
    CHECK(check_cycle_player_counts(tg, *cyc));
    std::uint64_t seen = 0;
    for_each_simple_cycle(tg, [&](const std::vector<TgEdge>& cycle) {
      ++seen;
      CHECK(check_cycle_player_counts(tg, cycle));
      return true;
    });
    CHECK(seen > 0);
    for (PlayerId i = 0; i < n; ++i) CHECK(every_cycle_moves(tg, i));
  }
}

TEST_CASE("check_cycle_player_counts rejects a non-cycle") {
  const GraphGame c = all_type(4, PlayerType::T3);
  const TransitionGraph tg = build_tg(c.base);
  const auto cyc = find_cycle(tg);
  REQUIRE(cyc);
  std::vector<TgEdge> broken = *cyc;
  broken.pop_back();
  CHECK_THROWS_AS((void)check_cycle_player_counts(tg, broken), std::invalid_argument);
  CHECK_THROWS_AS((void)check_cycle_player_counts(tg, {{0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("simple cycle enumeration matches brute force on small graphs") {
  // Count simple cycles by canonical rotation over all edge sequences.
  const GraphGame c = all_type(3, PlayerType::T3);
  const TransitionGraph tg = build_tg(c.base);
  std::set<std::vector<NodeId>> found;
  for_each_simple_cycle(tg, [&](const std::vector<TgEdge>& cyc) {
    std::vector<NodeId> nodes;
    for (const TgEdge& e : cyc) nodes.push_back(e.from);
    std::rotate(nodes.begin(), std::min_element(nodes.begin(), nodes.end()), nodes.end());
    CHECK(found.insert(nodes).second);
    return true;
  });
  // Brute force: extend paths from their minimum node.
  std::set<std::vector<NodeId>> brute;
  std::function<void(std::vector<NodeId>&)> extend = [&](std::vector<NodeId>& path) {
    for (const TgEdge& e : tg.out_edges(path.back())) {
      if (e.to == path.front()) brute.insert(path);
      if (e.to > path.front() && std::find(path.begin(), path.end(), e.to) == path.end()) {
        path.push_back(e.to);
        extend(path);
        path.pop_back();
      }
    }
  };
  for (NodeId v = 0; v < tg.node_count(); ++v) {
    std::vector<NodeId> path{v};
    extend(path);
  }
  CHECK(found == brute);
  CHECK(for_each_simple_cycle(tg, [](const auto&) { return true; }, 1) == 1);
}

TEST_CASE("verify_potential") {
  const GraphGame tree = [] {
    Rng rng(5);
    return random_tree_game(4, rng);
  }();
  const TransitionGraph tg = build_tg(tree.base);
  // Longest remaining path is a potential on any DAG.
  std::vector<std::int64_t> height(tg.node_count(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (NodeId v = 0; v < tg.node_count(); ++v) {
      for (const TgEdge& e : tg.out_edges(v)) {
        if (height[v] < height[e.to] + 1) {
          height[v] = height[e.to] + 1;
          changed = true;
        }
      }
    }
  }
  const Potential phi = [&](const State& s) {
    return std::vector<std::int64_t>{height[tg.encode(tree.base, s)]};
  };
  CHECK(verify_potential(tree.base, tg, phi));
  CHECK_FALSE(verify_potential(tree.base, tg, [](const State&) { return std::vector<std::int64_t>{0}; }));

  const GraphGame c = all_type(4, PlayerType::T3);
  const TransitionGraph ctg = build_tg(c.base);
  CHECK_FALSE(verify_potential(c.base, ctg, [&](const State& s) {
    return std::vector<std::int64_t>{static_cast<std::int64_t>(ctg.encode(c.base, s))};
  }));
}

TEST_CASE("DOT export lists every edge") {
  const Game g = make_game(2, {{{0, 1}, {{1}, {2}}}});
  std::ostringstream os;
  write_dot(os, g, build_tg(g));
  const std::string dot = os.str();
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("strongly connected components of a cyclic circle") {
  const GraphGame c = all_type(4, PlayerType::T3);
  const TransitionGraph tg = build_tg(c.base);
  std::uint32_t count = 0;
  const auto comp = strongly_connected_components(tg, &count);
  CHECK(comp.size() == tg.node_count());
  // Every edge goes to a component with an id no larger than its source's.
  for (NodeId v = 0; v < tg.node_count(); ++v) {
    for (const TgEdge& e : tg.out_edges(v)) CHECK(comp[e.to] <= comp[v]);
  }
  CHECK(count < tg.node_count());
}
