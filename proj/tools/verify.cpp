#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <brdyn/circle.hpp>
#include <brdyn/dynamics.hpp>
#include <brdyn/errors.hpp>
#include <brdyn/gadget.hpp>
#include <brdyn/generators.hpp>
#include <brdyn/transition_graph.hpp>

#include "cli.hpp"

namespace brdyn::cli {

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

using Check = std::function<std::string()>;

const std::vector<PlayerType> kMoving{PlayerType::T2, PlayerType::T2p, PlayerType::T3, PlayerType::T3p};
const std::vector<PlayerType> kAllTypes{PlayerType::T1,  PlayerType::T2,  PlayerType::T3,
                                        PlayerType::T1p, PlayerType::T2p, PlayerType::T3p};

std::vector<PlayerType> random_types(std::size_t n, const std::vector<PlayerType>& pool, Rng& rng) {
  std::vector<PlayerType> t(n);
  for (auto& x : t) x = pool[rng.below(pool.size())];
  return t;
}

Potential potential_for(const GraphGame& c, CaseTag tag) {
  if (tag == CaseTag::Case1) {
    return [&c](const State& s) { return std::vector<std::int64_t>{potential_case1(c, s)}; };
  }
  if (tag == CaseTag::Case2) {
    return [&c](const State& s) {
      const auto [a, b] = potential_case2(c, s);
      return std::vector<std::int64_t>{a, b};
    };
  }
  if (tag == CaseTag::Case3) {
    return [&c](const State& s) {
      const auto [a, b] = potential_case3(c, s);
      return std::vector<std::int64_t>{a, b};
    };
  }
  throw std::invalid_argument("no potential for case 4");
}

std::string tree_bound() {
  Rng rng(2001);
  std::uint64_t worst = 0, runs = 0;
  for (int k = 0; k < 200; ++k) {
    const GraphGame tree = random_tree_game(2 + rng.below(7), rng);
    const std::uint64_t n = tree.player_count();
    const TransitionGraph tg = build_tg(tree.base);
    require(is_acyclic(tg), "cyclic transition graph for tree " + std::to_string(k));
    const std::uint64_t lp = longest_path(tg);
    require(lp <= 2 * n * n, "longest path " + std::to_string(lp) + " above 2n^2");
    worst = std::max(worst, lp);
    for (int r = 0; r < 500; ++r) {
      const RunRecord rec = run(tree.base, random_state(tree.base, rng), Schedule::random_uniform(), rng.next(),
                                {2 * n * n, false});
      ++runs;
      require(rec.terminated, "random run exceeded 2n^2 steps");
    }
  }
  return "200 trees, max longest path " + std::to_string(worst) + ", " + std::to_string(runs) + " runs";
}

std::string tree_standard() {
  Rng rng(2002);
  for (int k = 0; k < 100; ++k) {
    const GraphGame tree = random_tree_game(2 + rng.below(6), rng);
    const Game c = tree_to_standard(tree);
    require(has_common_delays(c), "converted tree has player-specific delays");
    require(build_tg(c) == build_tg(tree.base), "conversion changed the transition graph");
  }
  return "100 trees converted with unchanged transition graphs";
}

std::string type_one_acyclic() {
  Rng rng(2003);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + rng.below(5);
    auto types = random_types(n, kAllTypes, rng);
    types[rng.below(n)] = rng.below(2) ? PlayerType::T1 : PlayerType::T1p;
    const TransitionGraph tg = build_tg(make_circle_game(types, rng).base);
    require(is_acyclic(tg), "cyclic circle with a type-1 player");
    require(longest_path(tg) <= 4 * n * n, "longest path above 4n^2");
  }
  return "200 circles with a type-1 player acyclic within 4n^2";
}

std::string type_three_cycles() {
  Rng rng(2004);
  std::ostringstream os;
  for (std::size_t n = 3; n <= 5; ++n) {
    const GraphGame c = make_circle_game(std::vector<PlayerType>(n, PlayerType::T3), rng);
    const TransitionGraph tg = build_tg(c.base);
    require(find_cycle(tg).has_value(), "no cycle for n = " + std::to_string(n));
    bool ok = true;
    const auto count = for_each_simple_cycle(tg, [&](const std::vector<TgEdge>& cyc) {
      return ok = check_cycle_player_counts(tg, cyc);
    });
    require(ok, "simple cycle with a player moving fewer than twice");
    os << "n=" << n << ": " << count << " cycles ";
  }
  return os.str();
}

std::string case_potentials() {
  Rng rng(2005);
  std::map<CaseTag, int> done;
  for (int attempt = 0; attempt < 20000 && (done[CaseTag::Case1] < 20 || done[CaseTag::Case2] < 20 ||
                                            done[CaseTag::Case3] < 20);
       ++attempt) {
    const std::size_t n = 2 + rng.below(5);
    const auto types = rng.below(4) == 0 ? std::vector<PlayerType>(n, rng.below(2) ? PlayerType::T2 : PlayerType::T2p)
                                         : random_types(n, kMoving, rng);
    const GraphGame c = make_circle_game(types, rng);
    const CaseTag tag = classify_case(c);
    if (tag == CaseTag::Case4 || done[tag] >= 20) continue;
    require(verify_potential(c.base, build_tg(c.base), potential_for(c, tag)),
            std::string(to_string(tag)) + " potential does not decrease");
    ++done[tag];
  }
  require(done[CaseTag::Case1] >= 20 && done[CaseTag::Case2] >= 20 && done[CaseTag::Case3] >= 20,
          "not enough games per case");
  return "20 games per case verified";
}

std::string case_three_linear() {
  Rng rng(2006);
  std::ostringstream os;
  for (std::size_t n : {4, 6, 8}) {
    const std::uint64_t lp = longest_path(build_tg(make_circle_game(std::vector<PlayerType>(n, PlayerType::T2), rng).base));
    require(lp <= 3 * n, "longest path above 3n for n = " + std::to_string(n));
    os << "n=" << n << ": " << lp << " ";
  }
  return os.str();
}

std::string synchronized_block_movers() {
  Rng rng(2007);
  std::uint64_t states = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    const GraphGame c = make_circle_game(std::vector<PlayerType>(n, PlayerType::T3), rng);
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
      std::vector<bool> ones(n);
      for (std::size_t i = 0; i < n; ++i) ones[i] = (bits >> i) & 1;
      const State s = c.state_from_bits(ones);
      if (is_nash(c.base, s)) continue;
      ++states;
      int up = 0, down = 0;
      for (PlayerId i : unsatisfied_players(c.base, s)) (c.plays_one(s, i) ? down : up) += 1;
      require(up == down, "unequal directed counts");
      for (const Block& b : synchronized_blocks(c, s)) {
        int unsat = 0;
        for (std::size_t k = 0; k < b.length; ++k) {
          unsat += is_satisfied(c.base, s, c.ring_players[(b.start + k) % n]) ? 0 : 1;
        }
        require(unsat == 1, "block without exactly one unsatisfied player");
      }
    }
  }
  return std::to_string(states) + " non-equilibrium states";
}

std::string token_round_trip() {
  Rng rng(2008);
  int checked = 0;
  for (int k = 0; k < 500; ++k) {
    const GraphGame c = make_circle_game(random_types(2 + rng.below(11), kMoving, rng), rng);
    const State s = random_state(c.base, rng);
    const TokenMap m = place_tokens(c, s);
    if (m.empty()) continue;
    require(tokens_to_state(c, m) == s, "placement does not determine the state");
    ++checked;
  }
  return std::to_string(checked) + " non-empty placements";
}

std::string token_monotone() {
  Rng rng(2009);
  std::uint64_t collisions = 0;
  for (int k = 0; k < 1000; ++k) {
    const GraphGame c = make_circle_game(random_types(2 + rng.below(11), kMoving, rng), rng);
    State s = random_state(c.base, rng);
    const RunRecord r = run(c.base, s, Schedule::random_uniform(), rng.next(), {100000, true});
    const auto counts = token_count_trace(c, r);
    for (std::size_t t = 0; t < r.trace->size(); ++t) {
      const Move& m = (*r.trace)[t];
      const bool collision = s.congestion(m.from) != 1 && s.congestion(m.to) != 1;
      s.move(m.player, m.to);
      const std::int64_t delta = counts[t + 1] - counts[t];
      require(delta == (collision ? -2 : 0), "token count changed by " + std::to_string(delta));
      collisions += collision ? 1 : 0;
    }
  }
  return "1000 runs, " + std::to_string(collisions) + " collisions";
}

std::string walk_closed_form() {
  for (std::size_t n = 1; n <= 30; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      const Rational e = walk_expected_steps(n, k);
      require(e.den == 1 && e.num == static_cast<std::int64_t>(k * (n - k)), "absorption time differs from k(n-k)");
    }
  }
  return "n <= 30";
}

std::string gadget_census() {
  for (std::size_t n = 2; n <= 8; ++n) {
    const GadgetGame g = build_gadget_game(n);
    for (std::size_t i = 0; i < n; ++i) {
      require(g.game.base.interested(g.resource(i, 0)).size() == 6 * n, "r_{i,0} interest differs from 6n");
      require(g.game.base.interested(g.resource(i, 1)).size() == 2 * n, "r_{i,1} interest differs from 2n");
      require(g.game.base.interested(g.resource(i, 2)).size() == 2 * n, "r_{i,2} interest differs from 2n");
    }
    std::uint64_t sum = 0;
    for (auto c : equilibrium_reference(g)) sum += c;
    require(sum == g.player_count(), "reference congestions do not sum to 5n^2");
  }
  return "n = 2..8";
}

std::string gadget_equilibria() {
  const GadgetGame g = build_gadget_game(2);
  const auto eq = brute_force_equilibria(g);
  require(!eq.empty(), "no equilibrium");
  const auto ref = equilibrium_reference(g);
  for (const State& s : eq) {
    for (ResourceId r = 0; r < ref.size(); ++r) require(s.congestion(r) == ref[r], "congestion differs from (6,2,2)");
    for (std::size_t i = 0; i < g.n; ++i) {
      std::array<int, 5> zeros{};
      for (int j = 0; j < 5; ++j) {
        for (std::size_t k = 0; k < g.n; ++k) {
          const PlayerId p = g.player(i, j, k);
          zeros[j] += s.choice(p) == g.game.edges[p].zero ? 1 : 0;
        }
      }
      require(zeros[0] == zeros[1] && zeros[2] == zeros[3], "group pairing violated");
    }
  }
  return std::to_string(eq.size()) + " equilibria of 2^20 states";
}

std::string replay_on(std::size_t n) {
  const GadgetGame g = build_gadget_game(n);
  const ReplayResult over = replay_overload_generation(g);
  const ReplayResult under = replay_underload_generation(g);
  return "n=" + std::to_string(n) + ": tokens " + std::to_string(over.panels.front().tokens.total()) + " -> " +
         std::to_string(over.panels.back().tokens.total()) + " (overload), " +
         std::to_string(under.panels.front().tokens.total()) + " -> " +
         std::to_string(under.panels.back().tokens.total()) + " (underload)";
}

const std::map<std::string, std::vector<std::pair<std::string, Check>>>& suites() {
  static const std::map<std::string, std::vector<std::pair<std::string, Check>>> kSuites{
      {"trees", {{"tree-bound", tree_bound}, {"tree-to-standard", tree_standard}}},
      {"circle-cases",
       {{"type-1-acyclic", type_one_acyclic},
        {"type-3-cycles", type_three_cycles},
        {"case-potentials", case_potentials},
        {"case-3-linear", case_three_linear},
        {"block-movers", synchronized_block_movers}}},
      {"tokens",
       {{"round-trip", token_round_trip}, {"monotone", token_monotone}, {"walk", walk_closed_form}}},
      {"gadget-oracle", {{"census", gadget_census}, {"equilibria", gadget_equilibria}}},
      {"gadget-replay", {{"replay-4", [] { return replay_on(4); }}, {"replay-6", [] { return replay_on(6); }}}},
  };
  return kSuites;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& [name, checks] : suites()) names.push_back(name);
    return names;
  }();
  return kNames;
}

bool run_verify_suite(const std::string& suite) {
  const auto it = suites().find(suite);
  if (it == suites().end()) throw std::invalid_argument("unknown suite '" + suite + "'");
  bool all = true;
  for (const auto& [name, check] : it->second) {
    std::string detail;
    bool ok = true;
    try {
      detail = check();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    all = all && ok;
    std::printf("%s  %-18s %s\n", ok ? "ok  " : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s: %s\n", suite.c_str(), all ? "passed" : "failed");
  return all;
}

}  // namespace brdyn::cli
