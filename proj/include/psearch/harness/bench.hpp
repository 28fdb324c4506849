#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "psearch/core/domains.hpp"
#include "psearch/engine/config.hpp"
#include "psearch/harness/metrics.hpp"

namespace psearch {

struct BenchJob {
    DomainSpec domain;
    EngineConfig engine;
};

struct BenchOptions {
    std::string csv_path;            // empty: no file output
    std::ostream *progress = nullptr; // one line per finished run
};

/*
  Run every job and return the records.  With a csv_path the file is
  written incrementally — header first, one flushed row per finished
  run — so a partial file is still a valid CSV if the process dies.
*/
std::vector<RunRecord> run_benchmark(const std::vector<BenchJob> &jobs,
                                     const BenchOptions &opts);

// Engine grid used by both built-in suites: the sequential reference,
// the unconstrained engine, and the constrained engine with and
// without separate evaluation, across the given worker counts.
std::vector<EngineConfig> engine_grid(const std::vector<int> &ks, std::int64_t delay_ns,
                                      SchedulerKind scheduler, std::uint64_t sched_seed);

/*
  Small mixed suite (plateau, random graph, grid, sliding tile) that a
  single desk core finishes in seconds under the deterministic
  scheduler.  Instance sizes are deliberately modest: the point is
  direction and shape of the metrics, not absolute throughput.
*/
std::vector<BenchJob> desk_suite(std::int64_t delay_ns, std::uint64_t sched_seed);

// Plateau-dominated suite: the workload where evaluation decoupling
// should pay and unconstrained sharing mostly should not.
std::vector<BenchJob> plateau_suite(std::int64_t delay_ns, std::uint64_t sched_seed);

} // namespace psearch
