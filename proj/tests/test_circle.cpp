#include <doctest.h>

#include <algorithm>
#include <functional>
#include <stdexcept>

#include <set>

#include <brdyn/circle.hpp>
#include <brdyn/generators.hpp>
#include <brdyn/transition_graph.hpp>

using namespace brdyn;

namespace {

const std::vector<PlayerType> kMoving{PlayerType::T2, PlayerType::T2p, PlayerType::T3, PlayerType::T3p};

GraphGame circle(const std::vector<PlayerType>& types, std::uint64_t seed = 1) {
  Rng rng(seed);
  return make_circle_game(types, rng);
}

std::vector<PlayerType> random_types(std::size_t n, Rng& rng) {
  std::vector<PlayerType> t(n);
  for (auto& x : t) x = kMoving[rng.below(kMoving.size())];
  return t;
}

// Termination points straight from the listed type pairs (previous, current).
TerminationPoints listed_termination_points(const GraphGame& c, const std::vector<PlayerType>& t) {
  using P = PlayerType;
  const std::set<std::pair<P, P>> over{{P::T2p, P::T2}, {P::T3, P::T3p}, {P::T3, P::T2}, {P::T2p, P::T3p}};
  const std::set<std::pair<P, P>> under{{P::T2, P::T2p}, {P::T3, P::T3p}, {P::T2, P::T3p}, {P::T3, P::T2p}};
  TerminationPoints tp;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::pair<P, P> pair{t[(i + n - 1) % n], t[i]};
    if (over.contains(pair)) tp.overload.push_back(c.ring_resources[i]);
    if (under.contains(pair)) tp.underload.push_back(c.ring_resources[i]);
  }
  return tp;
}

std::vector<int> by_position(const GraphGame& c, const TokenMap& m) {
  std::vector<int> out;
  for (ResourceId r : c.ring_resources) out.push_back(m.tokens[r]);
  return out;
}

}  // namespace

TEST_CASE("place_tokens examples") {
  const GraphGame c = circle({PlayerType::T3, PlayerType::T3, PlayerType::T3});
  CHECK(place_tokens(c, c.state_from_bits({0, 0, 0})).empty());
  const State s(c.base, {0, 1, 0});
  const TokenMap m = place_tokens(c, s);
  CHECK(m.tokens == std::vector<int>{1, 0, -1});
  CHECK(m.reference == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(tokens_to_state(c, m) == s);

  const GraphGame c8 = circle(std::vector<PlayerType>(8, PlayerType::T3));
  for (std::size_t k = 1; k < 8; ++k) {
    const TokenMap t = place_tokens(c8, two_block_state(c8, k));
    CHECK(t.overload_count() == 1);
    CHECK(t.underload_count() == 1);
  }
}

TEST_CASE("tokens_to_state rejects empty and illegal placements") {
  const GraphGame c = circle(std::vector<PlayerType>(4, PlayerType::T3));
  TokenMap m{{0, 0, 0, 0}, {1, 1, 1, 1}};
  CHECK_THROWS_AS(tokens_to_state(c, m), std::invalid_argument);
  m.tokens = {1, 1, -1, -1};  // not alternating
  CHECK_THROWS_AS(tokens_to_state(c, m), std::invalid_argument);
  m.tokens = {1, 0, 0, 0};
  CHECK_THROWS_AS(tokens_to_state(c, m), std::invalid_argument);
  m.tokens = {2, -1, -1, 0};
  CHECK_THROWS_AS(tokens_to_state(c, m), std::invalid_argument);
}

TEST_CASE("property: token placement round-trips and alternates, n <= 8 exhaustive") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const GraphGame c = circle(std::vector<PlayerType>(n, PlayerType::T2));
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<bool> ones(n);
      for (std::size_t i = 0; i < n; ++i) ones[i] = (bits >> i) & 1;
      const State s = c.state_from_bits(ones);
      const TokenMap m = place_tokens(c, s);
      CHECK(m.overload_count() == m.underload_count());
      int last = 0;
      for (int t : by_position(c, m)) {
        CHECK(t >= -1);
        CHECK(t <= 1);
        if (t != 0) {
          CHECK(t != last);
          last = t;
        }
      }
      if (!m.empty()) CHECK(tokens_to_state(c, m) == s);
    }
  }
}

TEST_CASE("token directions") {
  using D = Direction;
  CHECK(token_directions(PlayerType::T3) == std::pair{D::Clockwise, D::Clockwise});
  CHECK(token_directions(PlayerType::T2) == std::pair{D::Anticlockwise, D::Clockwise});
  CHECK(token_directions(PlayerType::T2p) == std::pair{D::Clockwise, D::Anticlockwise});
  CHECK(token_directions(PlayerType::T3p) == std::pair{D::Anticlockwise, D::Anticlockwise});
  CHECK_THROWS_AS(token_directions(PlayerType::T1), std::invalid_argument);
  CHECK_THROWS_AS(token_directions(PlayerType::T1p), std::invalid_argument);
}

TEST_CASE("property: a single move shifts one token along its direction") {
  // When a move carries a token across the mover, the direction matches its type.
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 4 + rng.below(5);
    const auto types = random_types(n, rng);
    const GraphGame c = circle(types, trial);
    const State s = random_state(c.base, rng);
    for (PlayerId i : unsatisfied_players(c.base, s)) {
      State t = s;
      t.move(i, best_response(c.base, s, i));
      const auto before = by_position(c, place_tokens(c, s));
      const auto after = by_position(c, place_tokens(c, t));
      const std::size_t p = i;  // player i sits between positions i and i + 1
      const std::size_t q = (p + 1) % n;
      CHECK(before[p] + before[q] == after[p] + after[q]);
      if (before[p] != 0 && before[q] == 0 && after[q] == before[p]) {
        const auto [od, ud] = token_directions(types[p]);
        CHECK((before[p] > 0 ? od : ud) == Direction::Clockwise);
      }
      if (before[q] != 0 && before[p] == 0 && after[p] == before[q]) {
        const auto [od, ud] = token_directions(types[p]);
        CHECK((before[q] > 0 ? od : ud) == Direction::Anticlockwise);
      }
    }
  }
}

TEST_CASE("termination point examples") {
  using P = PlayerType;
  const GraphGame c = circle({P::T3, P::T2, P::T2, P::T2});
  const auto tp = termination_points(c);
  CHECK(std::find(tp.overload.begin(), tp.overload.end(), c.ring_resources[1]) != tp.overload.end());
  const auto none = termination_points(circle(std::vector<P>(5, P::T3)));
  CHECK(none.overload.empty());
  CHECK(none.underload.empty());
  const auto alt = termination_points(circle({P::T2, P::T2p, P::T2, P::T2p}));
  CHECK_FALSE(alt.overload.empty());
  CHECK_FALSE(alt.underload.empty());
}

TEST_CASE("property: termination points match the listed type pairs") {
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const auto types = random_types(2 + rng.below(10), rng);
    const GraphGame c = circle(types, trial);
    const auto tp = termination_points(c);
    const auto listed = listed_termination_points(c, types);
    CHECK(tp.overload == listed.overload);
    CHECK(tp.underload == listed.underload);
  }
}

TEST_CASE("classify_case examples") {
  using P = PlayerType;
  CHECK(classify_case(circle(std::vector<P>(5, P::T2))) == CaseTag::Case3);
  CHECK(classify_case(circle(std::vector<P>(5, P::T2p))) == CaseTag::Case3);
  CHECK(classify_case(circle(std::vector<P>(5, P::T3))) == CaseTag::Case4);
  CHECK(classify_case(circle(std::vector<P>(5, P::T3p))) == CaseTag::Case4);
  CHECK(classify_case(circle({P::T3, P::T2, P::T2, P::T2})) == CaseTag::Case2);
  CHECK(classify_case(circle({P::T2, P::T2p, P::T2, P::T2p})) == CaseTag::Case1);
  CHECK_THROWS_AS(classify_case(circle({P::T1, P::T2, P::T2})), std::invalid_argument);
}

TEST_CASE("potentials vanish at equilibria and refuse the wrong case") {
  using P = PlayerType;
  const GraphGame c1 = circle({P::T2, P::T2p, P::T2, P::T2p});
  const GraphGame c2 = circle({P::T3, P::T2, P::T2, P::T2});
  const GraphGame c3 = circle(std::vector<P>(4, P::T2));
  const auto zeros = std::vector<bool>(4, false);
  CHECK(potential_case1(c1, c1.state_from_bits(zeros)) == 0);
  CHECK(potential_case2(c2, c2.state_from_bits(zeros)) == std::pair<std::int64_t, std::int64_t>{0, 0});
  CHECK(potential_case3(c3, c3.state_from_bits(zeros)) == std::pair<std::int64_t, std::int64_t>{0, 0});
  CHECK_THROWS_AS((void)potential_case1(c3, c3.state_from_bits(zeros)), std::invalid_argument);
  CHECK_THROWS_AS((void)potential_case2(c1, c1.state_from_bits(zeros)), std::invalid_argument);
  CHECK_THROWS_AS((void)potential_case3(c2, c2.state_from_bits(zeros)), std::invalid_argument);
}

TEST_CASE("property: case potentials strictly decrease on every edge, n <= 6") {
  Rng rng(31);
  int checked[3] = {0, 0, 0};
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const auto types = random_types(n, rng);
    const GraphGame c = circle(types, trial);
    const TransitionGraph tg = build_tg(c.base);
    const CaseTag tag = classify_case(c);
    Potential phi;
    if (tag == CaseTag::Case1) {
      phi = [&](const State& s) { return std::vector<std::int64_t>{potential_case1(c, s)}; };
    } else if (tag == CaseTag::Case2) {
      phi = [&](const State& s) {
        const auto [a, b] = potential_case2(c, s);
        return std::vector<std::int64_t>{a, b};
      };
    } else if (tag == CaseTag::Case3) {
      phi = [&](const State& s) {
        const auto [a, b] = potential_case3(c, s);
        return std::vector<std::int64_t>{a, b};
      };
    } else {
      continue;
    }
    ++checked[static_cast<int>(tag)];
    CHECK(verify_potential(c.base, tg, phi));
    if (tag == CaseTag::Case1) {
      for (NodeId v = 0; v < tg.node_count(); ++v) {
        const State s = tg.decode(c.base, v);
        CHECK(potential_case1(c, s) <= static_cast<std::int64_t>(n) * place_tokens(c, s).total());
      }
    }
  }
  CHECK(checked[0] > 0);
  CHECK(checked[1] > 0);
  CHECK(checked[2] > 0);
}

TEST_CASE("walk_expected_steps") {
  CHECK(walk_expected_steps(5, 0) == Rational{0, 1});
  CHECK(walk_expected_steps(5, 5) == Rational{0, 1});
  CHECK(walk_expected_steps(4, 2) == Rational{4, 1});
  CHECK(walk_expected_steps(20, 10) == Rational{100, 1});
  for (std::size_t n = 1; n <= 60; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(walk_expected_steps(n, k) == Rational{static_cast<std::int64_t>(k * (n - k)), 1});
    }
  }
  CHECK_THROWS_AS(walk_expected_steps(3, 4), std::invalid_argument);
}

TEST_CASE("property: token counts never rise and fall by two at collisions") {
  Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(11);
    const auto types = random_types(n, rng);
    const GraphGame c = circle(types, trial);
    const State s = random_state(c.base, rng);
    const RunRecord r = run(c.base, s, Schedule::random_uniform(), trial, {10000, true});
    const auto counts = token_count_trace(c, r);
    REQUIRE(counts.size() == r.trace->size() + 1);
    CHECK(counts.front() == place_tokens(c, s).total());
    for (std::size_t k = 1; k < counts.size(); ++k) {
      CHECK((counts[k] == counts[k - 1] || counts[k] == counts[k - 1] - 2));
    }
    const auto tp = termination_points(c);
    if (r.terminated && tp.overload.empty() && tp.underload.empty()) CHECK(counts.back() == 0);
  }
}

TEST_CASE("tokens can rest at termination points in an equilibrium") {
  using P = PlayerType;
  // Overload parked at the (3, 2) termination point, underload at (2, 2').
  bool found = false;
  const GraphGame c = circle({P::T3, P::T2, P::T2p, P::T2, P::T2p});
  for (std::uint32_t bits = 0; bits < 32 && !found; ++bits) {
    std::vector<bool> ones(5);
    for (std::size_t i = 0; i < 5; ++i) ones[i] = (bits >> i) & 1;
    const State s = c.state_from_bits(ones);
    found = is_nash(c.base, s) && !place_tokens(c, s).empty();
  }
  CHECK(found);
}

TEST_CASE("a player matching both neighbours is satisfied") {
  Rng rng(43);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 3 + rng.below(6);
    std::vector<PlayerType> types(n);
    for (auto& t : types) t = rng.below(2) ? PlayerType::T2 : PlayerType::T3;
    const GraphGame c = circle(types, trial);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<bool> ones(n);
      for (std::size_t i = 0; i < n; ++i) ones[i] = (bits >> i) & 1;
      const State s = c.state_from_bits(ones);
      for (std::size_t p = 0; p < n; ++p) {
        if (ones[p] == ones[(p + 1) % n] && ones[p] == ones[(p + n - 1) % n]) {
          CHECK(is_satisfied(c.base, s, static_cast<PlayerId>(p)));
        }
      }
    }
  }
}

TEST_CASE("all-type-3 circles balance directed moves, one mover per block") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const GraphGame c = circle(std::vector<PlayerType>(n, PlayerType::T3));
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<bool> ones(n);
      for (std::size_t i = 0; i < n; ++i) ones[i] = (bits >> i) & 1;
      const State s = c.state_from_bits(ones);
      if (is_nash(c.base, s)) continue;
      int up = 0, down = 0;
      for (PlayerId i : unsatisfied_players(c.base, s)) (ones[i] ? down : up) += 1;
      CHECK(up == down);
      for (const Block& b : synchronized_blocks(c, s)) {
        int unsat = 0;
        for (std::size_t k = 0; k < b.length; ++k) {
          unsat += is_satisfied(c.base, s, static_cast<PlayerId>((b.start + k) % n)) ? 0 : 1;
        }
        CHECK(unsat == 1);
        CHECK_FALSE(is_satisfied(c.base, s, static_cast<PlayerId>(b.start)));
      }
    }
  }
}

TEST_CASE("two-block states") {
  const GraphGame c = circle(std::vector<PlayerType>(6, PlayerType::T3));
  CHECK(is_nash(c.base, two_block_state(c, 0)));
  CHECK(is_nash(c.base, two_block_state(c, 6)));
  const State s = two_block_state(c, 3);
  CHECK(unsatisfied_players(c.base, s).size() == 2);
  CHECK(synchronized_blocks(c, s).size() == 2);
  CHECK(synchronized_blocks(c, two_block_state(c, 0)).empty());
  CHECK_THROWS_AS(two_block_state(c, 7), std::invalid_argument);
}
