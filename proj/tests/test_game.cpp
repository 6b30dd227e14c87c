#include <doctest.h>

#include <algorithm>
#include <functional>
#include <stdexcept>

#include <brdyn/errors.hpp>
#include <brdyn/game.hpp>
#include <brdyn/generators.hpp>
#include <brdyn/transition_graph.hpp>

#include "oracles.hpp"

using namespace brdyn;

namespace {

// Player 0: d_a = (1,4), d_b = (2,5); player 1 fixed on a.
Game two_player_game() {
  return make_game(2, {{{0, 1}, {{1, 4}, {2, 5}}}, {{0}, {{1, 2}}}});
}

Game single_player() { return make_game(2, {{{0, 1}, {{1}, {2}}}}); }

}  // namespace

TEST_CASE("validate_game accepts distinct increasing tables") {
  const Game g(2, {{{0, 1}, {{1, 4}, {2, 5}}}, {{0}, {{1, 2}}}});
  CHECK(validate_game(g).ok());
}

TEST_CASE("validate_game reports a duplicate value across resources") {
  const Game g(2, {{{0, 1}, {{1, 4}, {4, 5}}}, {{0}, {{1, 2}}}});
  const auto res = validate_game(g);
  REQUIRE_FALSE(res.ok());
  REQUIRE(res.violations.size() == 1);
  const Violation& v = res.violations[0];
  CHECK(v.kind == Violation::Kind::Tie);
  CHECK(v.player == 0);
  CHECK(((v.resource == 0 && v.congestion == 2) || (v.resource == 1 && v.congestion == 1)));
}

TEST_CASE("validate_game reports a flat table") {
  const Game g(1, {{{0}, {{3, 3}}}, {{0}, {{1, 2}}}});
  const auto res = validate_game(g);
  REQUIRE_FALSE(res.ok());
  CHECK(res.violations[0].kind == Violation::Kind::NotIncreasing);
  CHECK(res.violations[0].player == 0);
}

TEST_CASE("validate_game flags bad strategy sets") {
  CHECK(validate_game(Game(2, {{{0, 5}, {{1}, {2}}}})).violations.at(0).kind ==
        Violation::Kind::ResourceOutOfRange);
  CHECK(validate_game(Game(2, {{{1, 1}, {{1}, {2}}}})).violations.at(0).kind ==
        Violation::Kind::DuplicateStrategy);
  CHECK_THROWS_AS(make_game(2, {{{1, 1}, {{1}, {2}}}}), InvalidGame);
}

TEST_CASE("cross-player equal values are allowed") {
  CHECK(validate_game(Game(1, {{{0}, {{1, 2}}}, {{0}, {{1, 2}}}})).ok());
}

TEST_CASE("best_response examples") {
  const Game g = two_player_game();
  const State both_on_a(g, {0, 0});
  CHECK(best_response(g, both_on_a, 0) == 1);
  CHECK_FALSE(is_satisfied(g, both_on_a, 0));
  CHECK(unsatisfied_players(g, both_on_a) == std::vector<PlayerId>{0});

  const Game s = single_player();
  CHECK(best_response(s, State(s, {0}), 0) == 0);
  CHECK(best_response(s, State(s, {1}), 0) == 0);
  CHECK(is_satisfied(s, State(s, {0}), 0));
  CHECK_FALSE(is_satisfied(s, State(s, {1}), 0));
  CHECK(is_nash(s, State(s, {0})));

  CHECK_THROWS_AS((void)best_response(s, State(s, {0}), 3), std::out_of_range);
}

TEST_CASE("two players contending for one better resource are both unsatisfied") {
  // Both prefer a alone, but sharing a is worse than b alone.
  const Game g = make_game(2, {{{0, 1}, {{1, 4}, {2, 5}}}, {{0, 1}, {{1, 4}, {2, 5}}}});
  const State s(g, {0, 0});
  CHECK(unsatisfied_players(g, s) == std::vector<PlayerId>{0, 1});
  CHECK_FALSE(is_nash(g, s));
}

TEST_CASE("best_response refuses to break a tie") {
  // d_a(2) = d_b(1): a player sharing a compares equal values.
  const Game g(2, {{{0, 1}, {{1, 4}, {4, 5}}}, {{0}, {{1, 2}}}});
  CHECK_THROWS_AS((void)best_response(g, State(g, {0, 0}), 0), TieViolation);
}

TEST_CASE("State rejects choices outside the strategy set") {
  const Game g = two_player_game();
  CHECK_THROWS_AS(State(g, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(State(g, {0}), std::invalid_argument);
}

TEST_CASE("rank_reduce examples") {
  const Game g = make_game(2, {{{0, 1}, {{3, 9}, {7, 12}}}, {{1}, {{5, 6}}}});
  const Game r = rank_reduce(g);
  CHECK(r.player(0).delays == std::vector<std::vector<Delay>>{{1, 3}, {2, 4}});
  CHECK(rank_reduce(r) == r);
}

TEST_CASE("property: best_response agrees with the oracle and with rank_reduce") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.below(5);
    const std::size_t m = 1 + rng.below(4);
    const Game g = random_game(n, m, 3, rng);
    const Game r = rank_reduce(g);
    REQUIRE(validate_game(r).ok());
    for (const auto& p : oracle::all_profiles(g)) {
      const State s(g, p);
      bool any_unsat = false;
      for (PlayerId i = 0; i < n; ++i) {
        const ResourceId br = best_response(g, s, i);
        CHECK(br == oracle::best_response(g, p, i));
        CHECK(best_response(r, State(r, p), i) == br);
        any_unsat |= br != p[i];
      }
      CHECK(is_nash(g, s) == !any_unsat);
      CHECK(is_nash(g, s) == unsatisfied_players(g, s).empty());
    }
    CHECK(build_tg(g) == build_tg(r));
  }
}

TEST_CASE("property: congestion bookkeeping matches a recount after every move") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Game g = random_game(1 + rng.below(8), 1 + rng.below(6), 4, rng);
    State s = random_state(g, rng);
    for (int step = 0; step < 30; ++step) {
      const auto i = static_cast<PlayerId>(rng.below(g.player_count()));
      const auto strat = g.strategies(i);
      s.move(i, strat[rng.below(strat.size())]);
      REQUIRE(s.congestions() == recount(g, s.choices()));
      std::uint32_t total = 0;
      for (auto c : s.congestions()) total += c;
      CHECK(total == g.player_count());
    }
  }
}

TEST_CASE("has_common_delays") {
  CHECK(has_common_delays(make_game(1, {{{0}, {{1, 2}}}, {{0}, {{1, 2}}}})));
  CHECK_FALSE(has_common_delays(make_game(1, {{{0}, {{1, 2}}}, {{0}, {{1, 3}}}})));
}
