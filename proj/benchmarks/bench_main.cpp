#include <benchmark/benchmark.h>

#include <brdyn/circle.hpp>
#include <brdyn/dynamics.hpp>
#include <brdyn/experiment.hpp>
#include <brdyn/gadget.hpp>
#include <brdyn/generators.hpp>
#include <brdyn/transition_graph.hpp>

using namespace brdyn;

namespace {

// Best-response steps on the gadget ring under the random schedule.
void BM_GadgetSteps(benchmark::State& st) {
  const GadgetGame g = build_gadget_game(static_cast<std::size_t>(st.range(0)));
  const State init = initial_configuration(g);
  std::uint64_t seed = 1, steps = 0;
  for (auto _ : st) {
    const RunRecord r = run(g.game.base, init, Schedule::random_uniform(), seed++);
    steps += r.steps;
    benchmark::DoNotOptimize(r.final_state);
  }
  st.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
  st.counters["mean steps"] = static_cast<double>(steps) / static_cast<double>(st.iterations());
}
BENCHMARK(BM_GadgetSteps)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

// A 400-run batch spread over all cores.
void BM_GadgetBatch(benchmark::State& st) {
  const GadgetGame g = build_gadget_game(static_cast<std::size_t>(st.range(0)));
  const State init = initial_configuration(g);
  BatchConfig cfg{1, 400, 1'000'000'000, 0, Schedule::random_uniform()};
  for (auto _ : st) benchmark::DoNotOptimize(run_batch(g.game.base, init, cfg));
}
BENCHMARK(BM_GadgetBatch)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

// Two-block walk on the all-type-3 circle.
void BM_CircleWalk(benchmark::State& st) {
  Rng rng(5);
  const auto n = static_cast<std::size_t>(st.range(0));
  const GraphGame c = make_circle_game(std::vector<PlayerType>(n, PlayerType::T3), rng);
  const State init = two_block_state(c, n / 2);
  std::uint64_t seed = 1;
  for (auto _ : st) benchmark::DoNotOptimize(run(c.base, init, Schedule::random_uniform(), seed++).steps);
}
BENCHMARK(BM_CircleWalk)->Arg(20)->Arg(100)->Unit(benchmark::kMicrosecond);

// Full transition graph of an all-type-3 circle (2^n states).
void BM_BuildTg(benchmark::State& st) {
  Rng rng(6);
  const GraphGame c = make_circle_game(std::vector<PlayerType>(static_cast<std::size_t>(st.range(0)), PlayerType::T3), rng);
  const auto threads = static_cast<unsigned>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(build_tg(c.base, kDefaultNodeCap, threads));
  st.SetItemsProcessed(st.iterations() * (std::int64_t{1} << st.range(0)));
}
BENCHMARK(BM_BuildTg)->Args({12, 1})->Args({16, 1})->Args({16, 0})->Args({20, 0})->Unit(benchmark::kMillisecond);

// Longest path on the acyclic graph of an all-type-2 circle.
void BM_LongestPath(benchmark::State& st) {
  Rng rng(7);
  const GraphGame c = make_circle_game(std::vector<PlayerType>(static_cast<std::size_t>(st.range(0)), PlayerType::T2), rng);
  const TransitionGraph tg = build_tg(c.base);
  for (auto _ : st) benchmark::DoNotOptimize(longest_path(tg));
}
BENCHMARK(BM_LongestPath)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
