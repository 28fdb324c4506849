#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psearch/core/topology.hpp"
#include "psearch/engine/config.hpp"
#include "psearch/engine/trace.hpp"

namespace psearch {

enum class RunStatus { Solved, Exhausted, TimeLimit, MemLimit };

const char *to_string(RunStatus s);

struct SearchResult {
    RunStatus status = RunStatus::Exhausted;
    std::vector<StateId> path; // initial..goal when solved, else empty

    std::uint64_t expansions = 0;           // pops that generated successors
    std::uint64_t evaluations = 0;          // heuristic computations, initial state included
    std::uint64_t wasted_evaluations = 0;   // computed, then discarded at batch time
    std::int64_t wall_ns = 0;               // run start to terminating event
    std::size_t peak_open = 0;              // open list high-water mark
    std::vector<std::int64_t> worker_idle_ns; // per worker, coalesced idle spans

    SearchTrace trace;

    bool solved() const { return status == RunStatus::Solved; }
    double wall_seconds() const { return static_cast<double>(wall_ns) * 1e-9; }
    double eval_rate() const {
        return wall_ns > 0 ? static_cast<double>(evaluations) / wall_seconds() : 0.0;
    }
};

// Runs one search to completion.  Throws ValidationError on a bad
// config.  Deterministic-scheduler runs with equal (topology, config,
// sched_seed) produce byte-identical traces.
SearchResult run_search(const StateSpace &space, const EngineConfig &cfg);

// Full result record as a JSON object (serialized, human-readable).
std::string result_to_json(const SearchResult &result, const StateSpace &space,
                           const EngineConfig &cfg);

} // namespace psearch
