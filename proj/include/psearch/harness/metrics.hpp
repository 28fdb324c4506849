#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psearch/core/domains.hpp"
#include "psearch/engine/config.hpp"
#include "psearch/engine/runner.hpp"

namespace psearch {

/*
  One benchmark run, flattened to the exact fields the CSV stores.  The
  (domain, seed, sched_seed) triple identifies the instance; `engine`
  identifies the configuration that ran on it.
*/
struct RunRecord {
    std::string domain;     // instance label
    std::string kind;       // domain family
    std::uint64_t seed = 0; // domain seed
    std::string engine;     // engine label
    std::string constraint; // applied constraint label
    bool sge = false;
    int k = 1;
    std::string scheduler;
    std::uint64_t sched_seed = 0;
    bool solved = false;
    std::string fail_cause; // empty when solved
    std::uint64_t expansions = 0;
    std::uint64_t evaluations = 0;
    std::uint64_t wasted_evals = 0;
    double wall_s = 0.0;
    double eval_rate = 0.0;
    std::uint64_t peak_open = 0;
};

RunRecord make_record(const DomainSpec &spec, const EngineConfig &cfg,
                      const SearchResult &result);

/*
  exp of the mean log, with every value floored at 1 first — the usual
  guard that keeps a single zero (or sub-unit) count from collapsing or
  dominating a mean of counts.  Throws std::invalid_argument on empty
  input.
*/
double geometric_mean(const std::vector<double> &values);

// Per-configuration aggregation over the instances every configuration
// solved; one row per (engine label, worker count).
struct EngineAggregate {
    std::string engine;
    int k = 1;
    std::size_t runs = 0;       // records present
    std::size_t solved = 0;     // coverage
    double geo_expansions = 0;  // over common-solved instances
    double geo_evaluations = 0; // over common-solved instances
    double geo_wall_s = 0;      // over common-solved instances
    double geo_eval_rate = 0;   // over common-solved instances
    double mean_speedup = 0;    // arithmetic mean of baseline wall / own wall
    std::uint64_t wasted_evals = 0;
};

struct AggregateReport {
    std::size_t instances = 0;     // distinct (domain, seed, sched_seed)
    std::size_t common_solved = 0; // instances solved by every row
    std::string baseline;          // engine label speedups are relative to
    std::vector<EngineAggregate> rows;
    // pairwise[i][j]: instances row i solved and row j (having also
    // run them) did not.
    std::vector<std::vector<std::size_t>> pairwise;
};

/*
  Aggregate a flat record list.  Geometric means and speedups are
  computed only over instances with a solved record for every engine,
  so no engine gets credit for work it skipped or failed.  The baseline
  for speedups is the sequential reference when present, otherwise the
  lexicographically first engine.  Throws std::invalid_argument when
  `records` is empty.
*/
AggregateReport aggregate(const std::vector<RunRecord> &records);

} // namespace psearch
