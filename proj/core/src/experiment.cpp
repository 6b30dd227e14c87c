#include "brdyn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace brdyn {

std::vector<RunRow> run_batch(const Game& game, const State& initial, const BatchConfig& config) {
  std::vector<RunRow> rows(config.runs);
  unsigned jobs = config.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.jobs;
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(config.runs, 1)));
  const RunOptions options{config.max_steps, false};

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < config.runs;) {
      try {
        const std::uint64_t seed = config.base_seed + k;
        const RunRecord rec = run(game, initial, config.schedule, seed, options);
        rows[k] = {seed, rec.steps, rec.terminated};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

ExperimentSummary summarize(const std::string& game, std::size_t n, const std::string& schedule,
                            const std::vector<RunRow>& rows) {
  ExperimentSummary s{game, n, schedule, rows.size()};
  std::size_t done = 0;
  long double sum = 0;
  for (const RunRow& r : rows) {
    if (!r.terminated) {
      ++s.censored;
      continue;
    }
    s.min = done == 0 ? r.steps : std::min(s.min, r.steps);
    s.max = std::max(s.max, r.steps);
    sum += static_cast<long double>(r.steps);
    ++done;
  }
  if (done == 0) return s;
  const long double mean = sum / static_cast<long double>(done);
  long double sq = 0;
  for (const RunRow& r : rows) {
    if (!r.terminated) continue;
    const long double d = static_cast<long double>(r.steps) - mean;
    sq += d * d;
  }
  s.mean = static_cast<double>(mean);
  s.stddev = done > 1 ? static_cast<double>(std::sqrt(sq / static_cast<long double>(done - 1))) : 0.0;
  return s;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(s, &used);
  if (used != s.size()) throw std::invalid_argument("not an integer: " + s);
  return v;
}

}  // namespace

void write_experiment_csv(std::ostream& os, const ExperimentSummary& summary,
                          const std::vector<RunRow>& rows) {
  os << "game,n,schedule,seed,steps,terminated\n";
  for (const RunRow& r : rows) {
    os << summary.game << ',' << summary.n << ',' << summary.schedule << ',' << r.seed << ','
       << r.steps << ',' << (r.terminated ? 1 : 0) << '\n';
  }
  os << "#summary," << summary.game << ',' << summary.n << ',' << summary.schedule
     << ",runs=" << summary.runs << ",censored=" << summary.censored
     << ",mean=" << format_double(summary.mean) << ",stddev=" << format_double(summary.stddev)
     << ",min=" << summary.min << ",max=" << summary.max << '\n';
}

ExperimentCsv read_experiment_csv(std::istream& is) {
  ExperimentCsv out;
  std::string line;
  if (!std::getline(is, line) || line != "game,n,schedule,seed,steps,terminated") {
    throw std::invalid_argument("missing experiment CSV header");
  }
  bool have_summary = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    try {
      if (cells.at(0) == "#summary") {
        if (cells.size() != 10) throw std::invalid_argument("bad summary row");
        auto value = [&](std::size_t i, const std::string& key) {
          if (cells[i].rfind(key + "=", 0) != 0) throw std::invalid_argument("expected " + key);
          return cells[i].substr(key.size() + 1);
        };
        ExperimentSummary& s = out.summary;
        s.game = cells[1];
        s.n = to_u64(cells[2]);
        s.schedule = cells[3];
        s.runs = to_u64(value(4, "runs"));
        s.censored = to_u64(value(5, "censored"));
        s.mean = std::stod(value(6, "mean"));
        s.stddev = std::stod(value(7, "stddev"));
        s.min = to_u64(value(8, "min"));
        s.max = to_u64(value(9, "max"));
        have_summary = true;
        continue;
      }
      if (have_summary) throw std::invalid_argument("rows after the summary");
      if (cells.size() != 6) throw std::invalid_argument("expected 6 cells");
      out.game = cells[0];
      out.n = to_u64(cells[1]);
      out.schedule = cells[2];
      if (cells[5] != "0" && cells[5] != "1") throw std::invalid_argument("bad terminated flag");
      out.rows.push_back({to_u64(cells[3]), to_u64(cells[4]), cells[5] == "1"});
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("malformed CSV line: " + line);
    }
  }
  if (!have_summary) throw std::invalid_argument("missing summary row");
  if (out.rows.empty()) {
    out.game = out.summary.game;
    out.n = out.summary.n;
    out.schedule = out.summary.schedule;
  }
  return out;
}

}  // namespace brdyn
