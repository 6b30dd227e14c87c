#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "brdyn/dynamics.hpp"

namespace brdyn {

struct BatchConfig {
  std::uint64_t base_seed = 1;
  std::size_t runs = 1;
  std::uint64_t max_steps = 1'000'000'000;
  unsigned jobs = 1;  // 0 = hardware concurrency
  Schedule schedule;
};

/// One finished run; run k uses seed base_seed + k.
struct RunRow {
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  bool terminated = false;
};

/// Runs the batch, in parallel when jobs > 1. Rows are in run order and do not
/// depend on the number of jobs.
std::vector<RunRow> run_batch(const Game& game, const State& initial, const BatchConfig& config);

/// Statistics over the runs that reached an equilibrium; censored runs are
/// only counted.
struct ExperimentSummary {
  std::string game;
  std::size_t n = 0;
  std::string schedule;
  std::size_t runs = 0;
  std::size_t censored = 0;
  double mean = 0;
  double stddev = 0;  // sample standard deviation
  std::uint64_t min = 0;
  std::uint64_t max = 0;

  friend bool operator==(const ExperimentSummary&, const ExperimentSummary&) = default;
};

ExperimentSummary summarize(const std::string& game, std::size_t n, const std::string& schedule,
                            const std::vector<RunRow>& rows);

/// CSV with header `game,n,schedule,seed,steps,terminated`, one line per run
/// and a final `#summary,...` line.
void write_experiment_csv(std::ostream& os, const ExperimentSummary& summary,
                          const std::vector<RunRow>& rows);

struct ExperimentCsv {
  std::string game;
  std::size_t n = 0;
  std::string schedule;
  std::vector<RunRow> rows;
  ExperimentSummary summary;
};

/// Parses write_experiment_csv output. Throws std::invalid_argument on malformed input.
ExperimentCsv read_experiment_csv(std::istream& is);

}  // namespace brdyn
