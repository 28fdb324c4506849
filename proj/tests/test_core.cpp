#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <deque>
#include <random>
#include <sstream>

#include "psearch/core/domains.hpp"
#include "psearch/core/rng.hpp"
#include "psearch/core/solution.hpp"
#include "psearch/core/topology.hpp"
#include "psearch/core/topology_io.hpp"

using namespace psearch;

namespace {

// Reachability check used as an independent cross-check on generators.
bool goal_reachable(const StateSpace &space) {
    std::deque<StateId> frontier{space.initial()};
    std::unordered_map<StateId, bool> seen{{space.initial(), true}};
    std::vector<StateId> succ;
    while (!frontier.empty()) {
        StateId s = frontier.front();
        frontier.pop_front();
        if (space.is_goal(s))
            return true;
        space.successors(s, succ);
        for (StateId t : succ)
            if (!seen.count(t)) {
                seen[t] = true;
                frontier.push_back(t);
            }
    }
    return false;
}

std::size_t count_reachable(const StateSpace &space) {
    std::deque<StateId> frontier{space.initial()};
    std::unordered_map<StateId, bool> seen{{space.initial(), true}};
    std::vector<StateId> succ;
    while (!frontier.empty()) {
        StateId s = frontier.front();
        frontier.pop_front();
        space.successors(s, succ);
        for (StateId t : succ)
            if (!seen.count(t)) {
                seen[t] = true;
                frontier.push_back(t);
            }
    }
    return seen.size();
}

} // namespace

TEST_CASE("single state that is both init and goal loads") {
    std::istringstream in("state 0 h=0 init goal\n");
    auto topo = load_topology(in);
    CHECK(topo.num_states() == 1);
    CHECK(topo.initial() == 0);
    CHECK(topo.is_goal(0));
    CHECK(topo.heuristic(0) == 0);
    CHECK(topo.successor_list(0).empty());
}

TEST_CASE("goal state with an outgoing edge is rejected") {
    std::istringstream in("state 0 h=1 init\n"
                          "state 1 h=0 goal\n"
                          "edge 0 1\n"
                          "edge 1 0\n");
    CHECK_THROWS_AS(load_topology(in), ParseError);
}

TEST_CASE("goal state with nonzero h is rejected") {
    TopologyData d;
    d.init = 0;
    d.h = {1, 2};
    d.goal = {0, 1};
    d.succ = {{1}, {}};
    CHECK_THROWS_AS(ExplicitTopology(std::move(d)), ValidationError);
}

TEST_CASE("self loops and duplicate successors are rejected") {
    {
        TopologyData d;
        d.init = 0;
        d.h = {1, 0};
        d.goal = {0, 1};
        d.succ = {{0}, {}};
        CHECK_THROWS_WITH_AS(ExplicitTopology(std::move(d)), doctest::Contains("self-loop"),
                             ValidationError);
    }
    {
        TopologyData d;
        d.init = 0;
        d.h = {1, 0};
        d.goal = {0, 1};
        d.succ = {{1, 1}, {}};
        CHECK_THROWS_WITH_AS(ExplicitTopology(std::move(d)), doctest::Contains("duplicate"),
                             ValidationError);
    }
}

TEST_CASE("parse errors carry line numbers") {
    std::istringstream in("state 0 h=1 init\n"
                          "state 1 h=0 goal\n"
                          "edge 0\n");
    CHECK_THROWS_WITH_AS(load_topology(in), doctest::Contains("line 3"), ParseError);

    std::istringstream in2("state 0 h=oops init goal\n");
    CHECK_THROWS_WITH_AS(load_topology(in2), doctest::Contains("line 1"), ParseError);
}

TEST_CASE("exactly one init flag is required") {
    std::istringstream none("state 0 h=1\nstate 1 h=0 goal\nedge 0 1\n");
    CHECK_THROWS_WITH_AS(load_topology(none), doctest::Contains("init"), ParseError);

    std::istringstream two("state 0 h=1 init\nstate 1 h=0 init goal\nedge 0 1\n");
    CHECK_THROWS_WITH_AS(load_topology(two), doctest::Contains("init"), ParseError);
}

TEST_CASE("state ids must be contiguous from zero") {
    std::istringstream in("state 0 h=1 init\nstate 2 h=0 goal\nedge 0 2\n");
    CHECK_THROWS_WITH_AS(load_topology(in), doctest::Contains("contiguous"), ParseError);
}

TEST_CASE("edge file order defines successor order") {
    std::istringstream in("# fan out of the root\n"
                          "state 0 h=2 init\n"
                          "state 1 h=1\n"
                          "state 2 h=1\n"
                          "state 3 h=0 goal\n"
                          "edge 0 2\n"
                          "edge 0 1\n"
                          "edge 1 3\n"
                          "edge 2 3\n");
    auto topo = load_topology(in);
    CHECK(topo.successor_list(0) == std::vector<StateId>{2, 1});
}

TEST_CASE("save/load round trip preserves the topology") {
    auto topo = gen_plateau(4, 3);
    auto text = topology_to_string(topo);
    std::istringstream in(text);
    auto again = load_topology(in);
    CHECK(again == topo);
    CHECK(again.fingerprint() == topo.fingerprint());
    // Canonical serialization is byte-stable.
    CHECK(topology_to_string(again) == text);
}

TEST_CASE("plateau instance has the documented shape") {
    // depth 4, width 3: 4 chain states + goal + 4*3 siblings = 17.
    auto topo = gen_plateau(4, 3);
    REQUIRE(topo.num_states() == 17);
    CHECK(topo.initial() == 0);
    CHECK(topo.heuristic(0) == 4);
    CHECK(topo.heuristic(1) == 3);
    CHECK(topo.heuristic(2) == 2);
    CHECK(topo.heuristic(3) == 1);
    CHECK(topo.is_goal(4));
    CHECK(topo.heuristic(4) == 0);

    int goals = 0, dead_ends = 0;
    for (StateId s = 0; s < topo.num_states(); ++s) {
        if (topo.is_goal(s))
            ++goals;
        else if (topo.successor_list(s).empty())
            ++dead_ends;
    }
    CHECK(goals == 1);
    CHECK(dead_ends == 12);

    // Chain child first, then the three siblings, all one h worse.
    for (StateId i = 0; i < 4; ++i) {
        const auto &succ = topo.successor_list(i);
        REQUIRE(succ.size() == 4);
        const HValue child_h = topo.heuristic(succ[0]);
        CHECK(child_h == topo.heuristic(i) - 1);
        for (std::size_t j = 1; j < succ.size(); ++j)
            CHECK(topo.heuristic(succ[j]) == child_h + 1);
    }
}

TEST_CASE("degenerate plateau is a two-state chain") {
    auto topo = gen_plateau(1, 0);
    REQUIRE(topo.num_states() == 2);
    CHECK(topo.heuristic(0) == 1);
    CHECK(topo.is_goal(1));
    CHECK(topo.successor_list(0) == std::vector<StateId>{1});
}

TEST_CASE("random topologies are valid and goal-reachable across a seed sweep") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        // Construction already enforces the structural invariants; an
        // exception here is a failure.
        auto topo = gen_random(12, 0.15, 6, 2, seed);
        CHECK(goal_reachable(topo));
        CHECK(topo.num_states() == 12);
    }
}

TEST_CASE("random generation is deterministic per seed") {
    auto a = gen_random(20, 0.2, 8, 1, 42);
    auto b = gen_random(20, 0.2, 8, 1, 42);
    CHECK(topology_to_string(a) == topology_to_string(b));
    auto c = gen_random(20, 0.2, 8, 1, 43);
    CHECK(topology_to_string(a) != topology_to_string(c));
}

TEST_CASE("minimal random topology") {
    auto topo = gen_random(2, 1.0, 3, 1, 0);
    CHECK(topo.num_states() == 2);
    CHECK(topo.is_goal(1));
    CHECK(goal_reachable(topo));
}

TEST_CASE("tile: goal arrangement, heuristic, one-move instance") {
    // Blank one swap from home: 1 2 3 / 4 5 6 / 7 _ 8.
    SlidingTile tile(3, 3, {1, 2, 3, 4, 5, 6, 7, 0, 8});
    CHECK(tile.heuristic(tile.initial()) == 1);
    CHECK_FALSE(tile.is_goal(tile.initial()));

    StateId goal_id = tile.rank({1, 2, 3, 4, 5, 6, 7, 8, 0});
    CHECK(tile.is_goal(goal_id));
    CHECK(tile.heuristic(goal_id) == 0);
    CHECK(tile.successors(goal_id).empty());

    auto succ = tile.successors(tile.initial());
    CHECK(std::find(succ.begin(), succ.end(), goal_id) != succ.end());
}

TEST_CASE("tile: wrong-parity arrangement is rejected") {
    // Swapping two adjacent tiles of the goal flips parity: unsolvable.
    CHECK_THROWS_WITH_AS(SlidingTile(3, 3, {2, 1, 3, 4, 5, 6, 7, 8, 0}),
                         doctest::Contains("parity"), ValidationError);
}

TEST_CASE("tile: rank/unrank round trip") {
    SlidingTile tile(3, 3, {1, 2, 3, 4, 5, 6, 7, 0, 8});
    std::mt19937_64 rng(7);
    std::vector<int> perm{0, 1, 2, 3, 4, 5, 6, 7, 8};
    for (int trial = 0; trial < 50; ++trial) {
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
        CHECK(tile.unrank(tile.rank(perm)) == perm);
    }
}

TEST_CASE("tile: scrambles are soluble and deterministic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto perm = scramble_tile_permutation(3, 3, 12, seed);
        SlidingTile tile(3, 3, perm); // would throw if parity broke
        CHECK(goal_reachable(tile));
    }
    CHECK(scramble_tile_permutation(3, 3, 12, 5) == scramble_tile_permutation(3, 3, 12, 5));
}

TEST_CASE("tile: 2x2 board reaches exactly half the arrangements") {
    // One move off the goal; the soluble component is a 12-cycle, so
    // every arrangement in it is reachable even though the goal itself
    // generates nothing.
    SlidingTile tile(2, 2, {1, 2, 0, 3});
    CHECK(count_reachable(tile) == 12); // 4! / 2
}

TEST_CASE("grid: two by two, no obstacles") {
    GridNav grid(2, 2, {0, 0, 0, 0});
    CHECK(grid.heuristic(grid.initial()) == 2);
    CHECK(grid.is_goal(3));
    CHECK(grid.heuristic(3) == 0);
    CHECK(grid.successors(3).empty());
    // Shortest path visits 3 states; both L-shaped routes are valid.
    std::string why;
    CHECK(validate_path(grid, {0, 1, 3}, &why));
    CHECK(validate_path(grid, {0, 2, 3}, &why));
    CHECK_FALSE(validate_path(grid, {0, 3}, &why)); // diagonal is not an edge
}

TEST_CASE("grid: obstacles are never generated") {
    GridNav grid(3, 3, {0, 1, 0, 0, 0, 0, 0, 1, 0});
    auto succ = grid.successors(0);
    CHECK(succ == std::vector<StateId>{3}); // right neighbor (1) blocked
}

TEST_CASE("grid generator keeps the goal reachable") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto grid = gen_grid(6, 6, 0.3, seed);
        CHECK(goal_reachable(grid));
    }
}

TEST_CASE("materialization renumbers without changing structure") {
    SlidingTile tile(2, 2, {1, 2, 0, 3});
    auto topo = materialize_explicit(tile, 1 << 20);
    CHECK(topo.num_states() == 12);
    CHECK(topo.initial() == 0);
    CHECK(topo.heuristic(0) == tile.heuristic(tile.initial()));
    CHECK(goal_reachable(topo));

    CHECK_THROWS_WITH_AS(materialize_explicit(tile, 5), doctest::Contains("cap"),
                         ValidationError);
}

TEST_CASE("domain specs expand deterministically and carry labels") {
    DomainSpec spec;
    spec.kind = DomainKind::RandomGraph;
    spec.random_states = 15;
    spec.edge_density = 0.2;
    spec.h_max = 5;
    spec.goal_count = 1;
    spec.seed = 9;
    CHECK(spec.label() == "random-n15-p0.2-h5-g1-s9");
    auto a = make_domain(spec);
    auto b = make_domain(spec);
    CHECK(a->fingerprint() == b->fingerprint());

    DomainSpec plateau;
    plateau.kind = DomainKind::PlateauSynthetic;
    plateau.plateau_depth = 6;
    plateau.plateau_width = 4;
    CHECK(plateau.label() == "plateau-d6-x4");
    CHECK(make_domain(plateau)->state_count() == 6 + 1 + 24);

    CHECK(to_string(domain_kind_from_string("sliding-tile")) == "sliding-tile");
    CHECK_THROWS_AS(domain_kind_from_string("nope"), ValidationError);
}

TEST_CASE("reconstruct_path walks parent links back to the root") {
    ParentMap parents(std::optional<StateId>(10));
    parents.set(0, kNoState);
    parents.set(1, 0);
    parents.set(2, 1);
    CHECK(reconstruct_path(parents, 2) == std::vector<StateId>{0, 1, 2});
    CHECK(reconstruct_path(parents, 0) == std::vector<StateId>{0});

    CHECK_THROWS_AS(reconstruct_path(parents, 7), std::logic_error); // never admitted

    ParentMap cyclic(std::optional<StateId>(10));
    cyclic.set(1, 2);
    cyclic.set(2, 1);
    CHECK_THROWS_WITH_AS(reconstruct_path(cyclic, 1), doctest::Contains("cycle"),
                         std::logic_error);
}

TEST_CASE("validate_path rejects broken paths") {
    auto topo = gen_plateau(2, 1);
    std::string why;
    CHECK(validate_path(topo, {0, 1, 2}, &why));
    CHECK_FALSE(validate_path(topo, {}, &why));
    CHECK_FALSE(validate_path(topo, {1, 2}, &why));
    CHECK(why == "path does not start at the initial state");
    CHECK_FALSE(validate_path(topo, {0, 1}, &why));
    CHECK(why == "path does not end in a goal state");
    CHECK_FALSE(validate_path(topo, {0, 2}, &why));
    CHECK(why == "step 0 does not follow a successor edge");
}
