#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "psearch/core/domains.hpp"
#include "psearch/core/solution.hpp"
#include "psearch/core/topology.hpp"
#include "psearch/core/topology_io.hpp"
#include "psearch/engine/runner.hpp"

using namespace psearch;

namespace {

ExplicitTopology make_topo(StateId init, std::vector<HValue> h, std::vector<StateId> goals,
                           std::vector<std::pair<StateId, StateId>> edges) {
    TopologyData d;
    d.init = init;
    d.h = std::move(h);
    d.goal.assign(d.h.size(), 0);
    for (StateId g : goals)
        d.goal[static_cast<std::size_t>(g)] = 1;
    d.succ.assign(d.h.size(), {});
    for (auto [from, to] : edges)
        d.succ[static_cast<std::size_t>(from)].push_back(to);
    return ExplicitTopology(std::move(d));
}

std::string fixture(const char *name) {
    return std::string(PSEARCH_FIXTURE_DIR) + "/" + name;
}

EngineConfig seq_config() {
    EngineConfig cfg;
    cfg.algorithm = Algorithm::Gbfs;
    cfg.scheduler = SchedulerKind::Deterministic;
    return cfg;
}

} // namespace

TEST_CASE("start state that is already the goal") {
    auto topo = make_topo(0, {0}, {0}, {});
    auto result = run_search(topo, seq_config());
    CHECK(result.status == RunStatus::Solved);
    CHECK(result.path == std::vector<StateId>{0});
    CHECK(result.expansions == 0);
    CHECK(result.evaluations == 1); // the start is still evaluated
}

TEST_CASE("plateau: chain expanded in order, goal popped not expanded") {
    auto topo = gen_plateau(4, 3);
    auto result = run_search(topo, seq_config());
    CHECK(result.status == RunStatus::Solved);
    CHECK(result.expansions == 4);
    CHECK(result.trace.expanded_sequence() == std::vector<StateId>{0, 1, 2, 3});
    // Popped = expanded plus the final goal.
    CHECK(result.trace.popped_sequence() == std::vector<StateId>{0, 1, 2, 3, 4});
    CHECK(result.path == std::vector<StateId>{0, 1, 2, 3, 4});
    // Start plus four expansions of four successors each.
    CHECK(result.evaluations == 17);
    CHECK(result.wasted_evaluations == 0);
}

TEST_CASE("plateau: width only adds evaluations, never expansions") {
    auto narrow = run_search(gen_plateau(3, 1), seq_config());
    auto wide = run_search(gen_plateau(3, 5), seq_config());
    CHECK(narrow.expansions == 3);
    CHECK(wide.expansions == 3);
    CHECK(narrow.evaluations == 1 + 3 * 2);
    CHECK(wide.evaluations == 1 + 3 * 6);
}

TEST_CASE("greedy descent ignores the worse branch entirely") {
    auto topo = load_topology_file(fixture("diamond.topo"));
    auto result = run_search(topo, seq_config());
    CHECK(result.trace.expanded_sequence() == std::vector<StateId>{0, 2});
    CHECK(result.path == std::vector<StateId>{0, 2, 3});
    CHECK(result.evaluations == 1 + 2 + 1); // start, both children, goal dedup-free
}

TEST_CASE("equal-h successors pop in insertion order") {
    // Children 1, 2, 3 all tie at h=1; FIFO within the bucket means
    // generation order is pop order.  None reaches the goal except 3.
    auto topo = make_topo(0, {2, 1, 1, 1, 0}, {4},
                          {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
    auto result = run_search(topo, seq_config());
    CHECK(result.trace.expanded_sequence() == std::vector<StateId>{0, 1, 2, 3});
}

TEST_CASE("exhaustion on an unreachable goal") {
    auto topo = load_topology_file(fixture("unsolvable.topo"));
    auto result = run_search(topo, seq_config());
    CHECK(result.status == RunStatus::Exhausted);
    CHECK_FALSE(result.solved());
    CHECK(result.path.empty());
    CHECK(result.expansions == 3); // whole reachable component
}

TEST_CASE("already-generated states are not re-evaluated") {
    // Both children lead to the same grandchild; the second expansion
    // must skip it.
    auto topo = make_topo(0, {2, 1, 1, 0}, {3}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto result = run_search(topo, seq_config());
    CHECK(result.status == RunStatus::Solved);
    // start + {1,2} + goal evaluated once despite two parents.
    CHECK(result.evaluations == 4);
}

TEST_CASE("one-move sliding tile solves in a single expansion") {
    SlidingTile tile(3, 3, {1, 2, 3, 4, 5, 6, 7, 0, 8});
    auto result = run_search(tile, seq_config());
    CHECK(result.status == RunStatus::Solved);
    CHECK(result.expansions == 1);
    CHECK(result.path.size() == 2);
}

TEST_CASE("solution paths are valid walks from start to goal") {
    std::string why;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto topo = gen_random(25, 0.12, 6, 1, seed);
        auto result = run_search(topo, seq_config());
        REQUIRE(result.status == RunStatus::Solved);
        CAPTURE(seed);
        CHECK(validate_path(topo, result.path, &why));
    }
    auto grid = gen_grid(8, 8, 0.25, 3);
    auto result = run_search(grid, seq_config());
    REQUIRE(result.solved());
    CHECK(validate_path(grid, result.path, &why));
}

TEST_CASE("time limit halts the run with the right status") {
    auto cfg = seq_config();
    // Each evaluation costs 50us of simulated time; 60us allows the
    // start evaluation and the first expansion to begin, not finish.
    cfg.time_limit_ns = 60'000;
    auto result = run_search(gen_plateau(8, 6), cfg);
    CHECK(result.status == RunStatus::TimeLimit);
    CHECK_FALSE(result.solved());
    CHECK(result.wall_ns >= 60'000);
}

TEST_CASE("memory limit halts the run with the right status") {
    auto cfg = seq_config();
    cfg.mem_limit_bytes = 512; // a handful of open entries
    auto result = run_search(gen_plateau(8, 6), cfg);
    CHECK(result.status == RunStatus::MemLimit);
    CHECK_FALSE(result.solved());
}

TEST_CASE("trace dump is byte-stable across repeats") {
    auto topo = gen_plateau(5, 4);
    auto first = run_search(topo, seq_config());
    auto second = run_search(topo, seq_config());
    CHECK(trace_to_string(first.trace) == trace_to_string(second.trace));
    CHECK_FALSE(first.trace.events.empty());
}

TEST_CASE("wall time covers the start evaluation and all expansions") {
    auto result = run_search(gen_plateau(4, 3), seq_config());
    // 17 evaluations at 50us each is the dominant cost.
    CHECK(result.wall_ns >= 17 * 50'000);
    CHECK(result.eval_rate() > 0);
    CHECK(result.worker_idle_ns == std::vector<std::int64_t>{0});
}
