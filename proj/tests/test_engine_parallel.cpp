#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <string>
#include <vector>

#include "psearch/core/domains.hpp"
#include "psearch/core/solution.hpp"
#include "psearch/core/topology.hpp"
#include "psearch/core/topology_io.hpp"
#include "psearch/engine/constraint.hpp"
#include "psearch/engine/runner.hpp"
#include "psearch/oracle/bts.hpp"
#include "psearch/oracle/trace_check.hpp"

using namespace psearch;

namespace {

std::string fixture(const char *name) {
    return std::string(PSEARCH_FIXTURE_DIR) + "/" + name;
}

EngineConfig parallel_config(Algorithm alg, ConstraintKind constraint, bool sge, int k,
                             std::uint64_t sched_seed = 0) {
    EngineConfig cfg;
    cfg.algorithm = alg;
    cfg.constraint = constraint;
    cfg.sge = sge;
    cfg.k = k;
    cfg.scheduler = SchedulerKind::Deterministic;
    cfg.sched_seed = sched_seed;
    return cfg;
}

// Every parallel flavor that must collapse to the sequential reference
// at one worker.
std::vector<EngineConfig> all_variants(int k, std::uint64_t sched_seed = 0) {
    return {
        parallel_config(Algorithm::Kpgbfs, ConstraintKind::None, false, k, sched_seed),
        parallel_config(Algorithm::Kpgbfs, ConstraintKind::None, true, k, sched_seed),
        parallel_config(Algorithm::Cpgbfs, ConstraintKind::None, false, k, sched_seed),
        parallel_config(Algorithm::Cpgbfs, ConstraintKind::None, true, k, sched_seed),
        parallel_config(Algorithm::Cpgbfs, ConstraintKind::InflightMinH, false, k, sched_seed),
        parallel_config(Algorithm::Cpgbfs, ConstraintKind::InflightMinH, true, k, sched_seed),
    };
}

} // namespace

TEST_CASE("constraint bookkeeping: registry tracks starts, finishes, known h") {
    InflightRegistry reg;
    CHECK(reg.empty());
    reg.start(7, 5);
    reg.start(9, 3);
    CHECK(reg.size() == 2);

    // Unknown pending h starts unbounded and only ever tightens.
    reg.note_known_h(7, 4);
    reg.note_known_h(7, 6); // looser: ignored
    bool found = false;
    for (const auto &e : reg.entries())
        if (e.parent == 7) {
            found = true;
            CHECK(e.min_known_pending_h == 4);
        }
    CHECK(found);

    reg.finish(7);
    reg.finish(9);
    CHECK(reg.empty());
}

TEST_CASE("constraint predicate: candidate must not beat any in-flight bound") {
    const ExpansionConstraint &c = inflight_minh_constraint();
    InflightRegistry reg;
    OpenList open;

    // Empty registry never blocks.
    const auto &e1 = open.insert(10, 4);
    CHECK(c.satisfies(e1, reg));

    reg.start(1, 3); // expansion of a state with h=3 in flight
    CHECK_FALSE(c.satisfies(e1, reg)); // 4 > 3: would overtake the parent
    const auto &e2 = open.insert(11, 3);
    CHECK(c.satisfies(e2, reg)); // equal is fine

    reg.note_known_h(1, 1); // a successor evaluated to h=1, not yet inserted
    CHECK_FALSE(c.satisfies(e2, reg)); // 3 > 1: pending sibling is better
    const auto &e3 = open.insert(12, 1);
    CHECK(c.satisfies(e3, reg));

    reg.finish(1);
    CHECK(c.satisfies(e1, reg));

    CHECK(no_constraint().satisfies(e1, reg));
    CHECK(std::string(c.label()) == "inflight-minh");
}

TEST_CASE("one worker reduces every variant to the sequential order") {
    std::vector<ExplicitTopology> topos;
    topos.push_back(gen_plateau(4, 3));
    topos.push_back(gen_plateau(6, 5));
    topos.push_back(load_topology_file(fixture("diamond.topo")));
    topos.push_back(load_topology_file(fixture("nonmonotonic.topo")));
    topos.push_back(load_topology_file(fixture("unsolvable.topo")));
    for (std::uint64_t seed = 1; seed <= 8; ++seed)
        topos.push_back(gen_random(20, 0.15, 6, 1, seed));

    EngineConfig seq;
    seq.scheduler = SchedulerKind::Deterministic;
    for (const auto &topo : topos) {
        auto reference = run_search(topo, seq);
        for (const auto &cfg : all_variants(1)) {
            CAPTURE(topo.name());
            CAPTURE(cfg.engine_label());
            auto result = run_search(topo, cfg);
            CHECK(result.trace.expanded_sequence() == reference.trace.expanded_sequence());
            CHECK(result.status == reference.status);
            CHECK(result.evaluations == reference.evaluations);
        }
    }
}

TEST_CASE("deterministic scheduler replays identical event logs") {
    auto topo = gen_plateau(6, 4);
    for (const auto &cfg : all_variants(4, 11)) {
        CAPTURE(cfg.engine_label());
        auto first = run_search(topo, cfg);
        auto second = run_search(topo, cfg);
        auto third = run_search(topo, cfg);
        CHECK(trace_to_string(first.trace) == trace_to_string(second.trace));
        CHECK(trace_to_string(first.trace) == trace_to_string(third.trace));
    }
}

TEST_CASE("different scheduler seeds may reorder events but not break runs") {
    auto topo = gen_plateau(5, 7);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto cfg = parallel_config(Algorithm::Kpgbfs, ConstraintKind::None, false, 4, seed);
        auto result = run_search(topo, cfg);
        CHECK(result.status == RunStatus::Solved);
        std::string why;
        CHECK(validate_path(topo, result.path, &why));
    }
}

TEST_CASE("two hungry workers expand more than one on the trap fixture") {
    auto topo = load_topology_file(fixture("nonmonotonic.topo"));
    auto one = run_search(topo, parallel_config(Algorithm::Kpgbfs, ConstraintKind::None, false, 1));
    CHECK(one.expansions == 3);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto two =
            run_search(topo, parallel_config(Algorithm::Kpgbfs, ConstraintKind::None, false, 2, seed));
        CAPTURE(seed);
        CHECK(two.expansions > one.expansions);
        CHECK(two.status == RunStatus::Solved);
    }
}

TEST_CASE("unconstrained workers pop outside the membership set; constrained never do") {
    auto topo = load_topology_file(fixture("nonmonotonic.topo"));
    auto bts = bts_via_hwm(topo);

    auto loose = run_search(topo, parallel_config(Algorithm::Kpgbfs, ConstraintKind::None, false, 2));
    CHECK_FALSE(check_trace_constrained(loose.trace, bts).empty());

    for (bool sge : {false, true})
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto cfg = parallel_config(Algorithm::Cpgbfs, ConstraintKind::InflightMinH, sge, 2, seed);
            auto strict = run_search(topo, cfg);
            CAPTURE(sge);
            CAPTURE(seed);
            CHECK(check_trace_constrained(strict.trace, bts).empty());
            CHECK(strict.status == RunStatus::Solved);
        }
}

TEST_CASE("constrained sweep stays inside the membership set on random topologies") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto topo = gen_random(18, 0.15, 6, 1, seed);
        auto bts = bts_via_hwm(topo);
        for (bool sge : {false, true}) {
            auto cfg = parallel_config(Algorithm::Cpgbfs, ConstraintKind::InflightMinH, sge, 4, seed);
            auto result = run_search(topo, cfg);
            CAPTURE(seed);
            CAPTURE(sge);
            CHECK(check_trace_constrained(result.trace, bts).empty());
        }
    }
}

TEST_CASE("separate evaluation keeps its queue discipline on the trace") {
    auto topo = gen_plateau(6, 6);
    for (auto constraint : {ConstraintKind::None, ConstraintKind::InflightMinH}) {
        auto cfg = parallel_config(Algorithm::Cpgbfs, constraint, true, 4, 3);
        auto result = run_search(topo, cfg);
        std::string why;
        CAPTURE(static_cast<int>(constraint));
        CHECK(check_eval_uniqueness(result.trace, &why));
        CHECK(check_batch_atomicity(result.trace, &why));
        CHECK(check_uneval_precedence(result.trace, &why));
        INFO(why);
        CHECK(result.status == RunStatus::Solved);
    }
}

TEST_CASE("no state is ever evaluated twice, separate evaluation or not") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto topo = gen_random(22, 0.18, 6, 1, seed);
        for (const auto &cfg : all_variants(4, seed)) {
            auto result = run_search(topo, cfg);
            std::string why;
            CAPTURE(seed);
            CAPTURE(cfg.engine_label());
            CHECK(check_eval_uniqueness(result.trace, &why));
            INFO(why);
        }
    }
}

TEST_CASE("separate evaluation saturates the workers; inline evaluation cannot") {
    // One expansion yields 8 equal-priority evaluations; the shared
    // queue spreads them over all 8 workers while inline evaluation
    // under the constraint keeps exactly one in flight.
    auto topo = gen_plateau(3, 7);
    auto with =
        run_search(topo, parallel_config(Algorithm::Cpgbfs, ConstraintKind::InflightMinH, true, 8));
    auto without =
        run_search(topo, parallel_config(Algorithm::Cpgbfs, ConstraintKind::InflightMinH, false, 8));
    CHECK(peak_simultaneous_evaluations(with.trace) == 8);
    CHECK(peak_simultaneous_evaluations(without.trace) == 1);
    CHECK(with.expansions == without.expansions);
}

TEST_CASE("parallel exhaustion terminates cleanly on unsolvable input") {
    auto topo = load_topology_file(fixture("unsolvable.topo"));
    for (const auto &cfg : all_variants(4, 2)) {
        CAPTURE(cfg.engine_label());
        auto result = run_search(topo, cfg);
        CHECK(result.status == RunStatus::Exhausted);
        CHECK(result.path.empty());
    }
}

TEST_CASE("time and memory limits interrupt parallel runs") {
    auto topo = gen_plateau(12, 8);
    auto cfg = parallel_config(Algorithm::Kpgbfs, ConstraintKind::None, true, 4);
    cfg.time_limit_ns = 200'000;
    CHECK(run_search(topo, cfg).status == RunStatus::TimeLimit);

    cfg.time_limit_ns = 0;
    cfg.mem_limit_bytes = 2048;
    CHECK(run_search(topo, cfg).status == RunStatus::MemLimit);
}

TEST_CASE("a custom constraint plugs into the gate") {
    // Blocks everything while any expansion is in flight: the most
    // conservative gate there is; it must still solve, one pop at a
    // time.
    struct Exclusive final : ExpansionConstraint {
        std::string label() const override { return "exclusive"; }
        bool satisfies(const OpenEntry &, const InflightRegistry &reg) const override {
            return reg.empty();
        }
    };
    auto cfg = parallel_config(Algorithm::Cpgbfs, ConstraintKind::Custom, false, 4);
    cfg.custom_constraint = std::make_shared<Exclusive>();
    auto topo = gen_plateau(4, 3);
    auto result = run_search(topo, cfg);
    CHECK(result.status == RunStatus::Solved);
    CHECK(cfg.engine_label() == "cpgbfs[exclusive]");
    // Fully serialized pops reproduce the sequential expansion order.
    EngineConfig seq;
    seq.scheduler = SchedulerKind::Deterministic;
    auto reference = run_search(topo, seq);
    CHECK(result.trace.expanded_sequence() == reference.trace.expanded_sequence());
}

TEST_CASE("wasted evaluation accounting stays consistent") {
    // Separate evaluation can compute a state another group already
    // inserted; those land in wasted_evaluations, and useful + wasted
    // never exceeds total.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto topo = gen_random(24, 0.2, 5, 1, seed);
        auto cfg = parallel_config(Algorithm::Kpgbfs, ConstraintKind::None, true, 4, seed);
        auto result = run_search(topo, cfg);
        CHECK(result.wasted_evaluations <= result.evaluations);
    }
}

TEST_CASE("real scheduler smoke: solves and honors the path contract") {
    auto topo = gen_plateau(4, 3);
    for (bool sge : {false, true}) {
        EngineConfig cfg;
        cfg.algorithm = Algorithm::Cpgbfs;
        cfg.constraint = ConstraintKind::InflightMinH;
        cfg.sge = sge;
        cfg.k = 2;
        cfg.scheduler = SchedulerKind::Real;
        cfg.heuristic_delay_ns = 1000; // keep the busy-wait cheap
        auto result = run_search(topo, cfg);
        CAPTURE(sge);
        REQUIRE(result.status == RunStatus::Solved);
        std::string why;
        CHECK(validate_path(topo, result.path, &why));
        CHECK(result.evaluations >= 5);
        CHECK(result.wall_ns > 0);
    }
}

TEST_CASE("real scheduler smoke: sequential baseline also runs on real time") {
    EngineConfig cfg;
    cfg.scheduler = SchedulerKind::Real;
    cfg.heuristic_delay_ns = 1000;
    auto result = run_search(gen_plateau(3, 2), cfg);
    CHECK(result.status == RunStatus::Solved);
    CHECK(result.wall_ns > 0);
}
