// brdyn: simulate best-response dynamics, verify invariants, analyse transition graphs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <brdyn/circle.hpp>
#include <brdyn/errors.hpp>
#include <brdyn/experiment.hpp>
#include <brdyn/game_json.hpp>
#include <brdyn/transition_graph.hpp>

#include "cli.hpp"

using namespace brdyn;
using namespace brdyn::cli;

namespace {

void add_source_options(CLI::App* cmd, SourceOptions& opt) {
  cmd->add_option("builder", opt.builder, "Game builder")->check(CLI::IsMember({"circle", "gadget", "tree"}));
  cmd->add_option("--game", opt.game_file, "Game JSON file")->check(CLI::ExistingFile);
  cmd->add_option("--n", opt.n, "Players (circle), gadgets (gadget) or resources (tree)");
  cmd->add_option("--all-type", opt.all_type, "Type of every circle player: 1 2 3 1' 2' 3'");
  cmd->add_option("--types", opt.types, "Comma-separated circle player types in ring order");
  cmd->add_option("--game-seed", opt.game_seed, "Seed for random delay values")->capture_default_str();
}

void add_init_options(CLI::App* cmd, SourceOptions& opt) {
  cmd->add_option("--init", opt.init, "Initial state")
      ->check(CLI::IsMember({"default", "two-block", "canonical", "zeros", "ones", "random"}))
      ->capture_default_str();
  cmd->add_option("--zeros", opt.zeros, "Ring positions on the 0-strategy for --init two-block (default n/2)");
}

std::string slot_string(const Game& game, const State& s) {
  std::string out;
  for (PlayerId i = 0; i < game.player_count(); ++i) {
    out += std::to_string(*game.slot_of(i, s.choice(i)));
  }
  return out;
}

struct SimulateArgs {
  SourceOptions source;
  std::string schedule = "random";
  std::string script;
  std::size_t runs = 1;
  std::uint64_t seed = 1;
  std::uint64_t max_steps = 1'000'000'000;
  unsigned jobs = 0;
  std::string out;
  std::string trace;
};

int simulate(const SimulateArgs& a) {
  const Source src = build_source(a.source);
  const State init = initial_state(src, a.source);
  BatchConfig cfg;
  cfg.base_seed = a.seed;
  cfg.runs = a.runs;
  cfg.max_steps = a.max_steps;
  cfg.jobs = a.jobs;
  const Policy policy = parse_policy(a.schedule);
  if (policy == Policy::Scripted) {
    std::vector<PlayerId> seq;
    for (const auto& p : split(a.script, ',')) seq.push_back(static_cast<PlayerId>(std::stoul(p)));
    cfg.schedule = Schedule::scripted(std::move(seq));
  } else {
    cfg.schedule = {policy, {}};
  }
  const auto rows = run_batch(src.base(), init, cfg);
  const ExperimentSummary sum = summarize(src.name, src.n, std::string(to_string(policy)), rows);
  if (a.out.empty() || a.out == "-") {
    write_experiment_csv(std::cout, sum, rows);
  } else {
    std::ofstream os(a.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + a.out);
    write_experiment_csv(os, sum, rows);
    if (!os.flush()) throw std::runtime_error("failed writing " + a.out);
  }
  if (!a.trace.empty()) {
    const RunRecord r = run(src.base(), init, cfg.schedule, a.seed, {a.max_steps, true});
    std::ofstream os(a.trace, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + a.trace);
    write_trace_csv(os, *r.trace);
  }
  std::fprintf(stderr, "%s n=%zu %s: runs=%zu censored=%zu mean=%.6g stddev=%.6g min=%llu max=%llu\n",
               sum.game.c_str(), sum.n, sum.schedule.c_str(), sum.runs, sum.censored, sum.mean, sum.stddev,
               static_cast<unsigned long long>(sum.min), static_cast<unsigned long long>(sum.max));
  return 0;
}

struct TgArgs {
  SourceOptions source;
  std::string analysis;
  std::size_t cap = kDefaultNodeCap;
  std::uint64_t cycle_limit = 0;
  std::string dot;
};

int analyse_tg(const TgArgs& a) {
  const Source src = build_source(a.source);
  const Game& game = src.base();
  const TransitionGraph tg = build_tg(game, a.cap);
  std::printf("states %zu, edges %zu, equilibria %zu\n", tg.node_count(), tg.edge_count(), tg.sinks().size());
  if (!a.dot.empty()) {
    std::ofstream os(a.dot);
    if (!os) throw std::runtime_error("cannot open " + a.dot);
    write_dot(os, game, tg);
  }
  int status = 0;
  if (a.analysis == "cycles") {
    const auto cycle = find_cycle(tg);
    if (!cycle) {
      std::printf("acyclic\n");
    } else {
      std::printf("cycle of length %zu:\n", cycle->size());
      for (const TgEdge& e : *cycle) {
        std::printf("  %s --%u--> %s\n", slot_string(game, tg.decode(game, e.from)).c_str(), e.player,
                    slot_string(game, tg.decode(game, e.to)).c_str());
      }
      std::printf("every player moves at least twice: %s\n", check_cycle_player_counts(tg, *cycle) ? "yes" : "no");
      if (a.cycle_limit > 0) {
        std::uint64_t bad = 0;
        const auto count = for_each_simple_cycle(
            tg,
            [&](const std::vector<TgEdge>& c) {
              bad += check_cycle_player_counts(tg, c) ? 0 : 1;
              return true;
            },
            a.cycle_limit);
        std::printf("simple cycles enumerated %llu, with a player moving fewer than twice %llu\n",
                    static_cast<unsigned long long>(count), static_cast<unsigned long long>(bad));
      }
    }
  } else if (a.analysis == "longest-path") {
    if (!is_acyclic(tg)) {
      std::printf("cyclic: no longest path\n");
      status = 1;
    } else {
      const std::uint64_t lp = longest_path(tg);
      std::printf("longest path %llu\n", static_cast<unsigned long long>(lp));
      if (src.graph && src.graph->topology == Topology::Tree) {
        const std::uint64_t n = game.player_count();
        std::printf("tree bound 2n^2 = %llu: %s\n", static_cast<unsigned long long>(2 * n * n),
                    lp <= 2 * n * n ? "holds" : "violated");
        status = lp <= 2 * n * n ? 0 : 1;
      }
    }
  } else {
    if (!src.graph || src.graph->topology != Topology::Circle) {
      throw std::invalid_argument("potential analyses need a circle game");
    }
    const GraphGame& c = *src.graph;
    Potential phi;
    if (a.analysis == "potential:case1") {
      phi = [&c](const State& s) { return std::vector<std::int64_t>{potential_case1(c, s)}; };
    } else if (a.analysis == "potential:case2") {
      phi = [&c](const State& s) {
        const auto [x, y] = potential_case2(c, s);
        return std::vector<std::int64_t>{x, y};
      };
    } else {
      phi = [&c](const State& s) {
        const auto [x, y] = potential_case3(c, s);
        return std::vector<std::int64_t>{x, y};
      };
    }
    std::printf("game is %s\n", std::string(to_string(classify_case(c))).c_str());
    if (const auto bad = potential_violation(game, tg, phi)) {
      std::printf("%s violated on %s --%u--> %s\n", a.analysis.c_str(),
                  slot_string(game, tg.decode(game, bad->from)).c_str(), bad->player,
                  slot_string(game, tg.decode(game, bad->to)).c_str());
      status = 1;
    } else {
      std::printf("%s verified on every edge\n", a.analysis.c_str());
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-response dynamics in player-specific singleton congestion games"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Run a seeded batch and write per-run CSV");
  add_source_options(cmd_sim, sim.source);
  add_init_options(cmd_sim, sim.source);
  cmd_sim->add_option("--schedule", sim.schedule, "random | round-robin | min-index | scripted")
      ->check(CLI::IsMember({"random", "random-uniform", "round-robin", "min-index", "scripted"}))
      ->capture_default_str();
  cmd_sim->add_option("--script", sim.script, "Comma-separated player ids for --schedule scripted");
  cmd_sim->add_option("--runs", sim.runs, "Number of runs")->capture_default_str();
  cmd_sim->add_option("--seed", sim.seed, "Base seed; run k uses seed + k")->capture_default_str();
  cmd_sim->add_option("--max-steps", sim.max_steps, "Step cap per run")->capture_default_str();
  cmd_sim->add_option("--jobs", sim.jobs, "Worker threads, 0 = all cores")->capture_default_str();
  cmd_sim->add_option("--out", sim.out, "CSV output path (default stdout)");
  cmd_sim->add_option("--trace", sim.trace, "Write the move trace of the first run to this CSV");

  std::string suite;
  auto* cmd_verify = app.add_subcommand("verify", "Run an invariant suite");
  cmd_verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(verify_suites()));

  TgArgs tga;
  auto* cmd_tg = app.add_subcommand("tg", "Analyse the transition graph of a small game");
  add_source_options(cmd_tg, tga.source);
  cmd_tg->add_option("--analysis", tga.analysis, "cycles | longest-path | potential:case1|2|3")
      ->required()
      ->check(CLI::IsMember({"cycles", "longest-path", "potential:case1", "potential:case2", "potential:case3"}));
  cmd_tg->add_option("--cap", tga.cap, "Maximum number of states")->capture_default_str();
  cmd_tg->add_option("--cycle-limit", tga.cycle_limit, "Also enumerate up to this many simple cycles");
  cmd_tg->add_option("--dot", tga.dot, "Write the graph in Graphviz format");

  SourceOptions build;
  std::string build_out;
  auto* cmd_build = app.add_subcommand("build", "Write a built game as JSON");
  add_source_options(cmd_build, build);
  cmd_build->add_option("--out", build_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_sim) return simulate(sim);
    if (*cmd_verify) return run_verify_suite(suite) ? 0 : 1;
    if (*cmd_tg) return analyse_tg(tga);
    if (*cmd_build) {
      const Source src = build_source(build);
      if (build_out.empty() || build_out == "-") {
        save_game_json(std::cout, src.base(), src.hint());
      } else {
        std::ofstream os(build_out);
        if (!os) throw std::runtime_error("cannot open " + build_out);
        save_game_json(os, src.base(), src.hint());
      }
      return 0;
    }
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "error: %s (raise --cap)\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
