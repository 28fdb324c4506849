#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "psearch/core/topology.hpp"

namespace psearch {

/*
  Synthetic plateau instance: a goal-directed chain c_0 -> c_1 -> ... ->
  c_{depth-1} -> goal where every chain state also generates `width`
  dead-end siblings.  h decreases by one along the chain (h(c_i) =
  depth - i, h(goal) = 0) and each sibling generated alongside chain
  child c_{i+1} carries h(c_i), i.e. one worse than the chain child.
  Successor order: chain child first, then the siblings.

  Sequential greedy search expands exactly the `depth` chain states; the
  siblings only ever matter to unconstrained parallel variants.
*/
ExplicitTopology gen_plateau(int depth, int width);

/*
  Random digraph over `num_states` states: state 0 is initial, the last
  `goal_count` states are goals (h = 0, no out-edges), every other
  ordered pair (i, j) becomes an edge with probability `edge_density`,
  and non-goal h values are uniform in [0, h_max].  Regenerates (bounded
  attempts) until some goal is reachable from the initial state.
  Deterministic for a given seed.
*/
ExplicitTopology gen_random(StateId num_states, double edge_density, HValue h_max,
                            int goal_count, std::uint64_t seed);

/*
  Sliding-tile puzzle.  A board permutation lists, row-major, the tile
  at each cell (0 = blank).  Goal arrangement is 1, 2, ..., n-1 with the
  blank last.  State ids are the mixed-radix (Lehmer) rank of the
  permutation, so they are stable across runs without any interning.
  Heuristic: sum of Manhattan distances of the non-blank tiles.
  Successor order: blank moves up, down, left, right.
  Construction rejects arrangements that cannot reach the goal.
*/
class SlidingTile final : public StateSpace {
public:
    using StateSpace::successors;

    SlidingTile(int rows, int cols, std::vector<int> start_perm);

    StateId initial() const override { return initial_; }
    bool is_goal(StateId s) const override { return s == goal_id_; }
    HValue heuristic(StateId s) const override;
    void successors(StateId s, std::vector<StateId> &out) const override;
    std::optional<StateId> id_bound() const override { return id_bound_; }
    std::optional<StateId> state_count() const override { return std::nullopt; }
    std::uint64_t fingerprint() const override { return fingerprint_; }
    std::string name() const override { return name_; }

    StateId rank(const std::vector<int> &perm) const;
    std::vector<int> unrank(StateId id) const;

private:
    int rows_, cols_, n_;
    std::vector<StateId> fact_; // factorials up to n_, for ranking
    StateId initial_, goal_id_, id_bound_;
    std::uint64_t fingerprint_;
    std::string name_;
};

// Random soluble arrangement `steps` blank moves away from the goal
// (never undoing the previous move).  Deterministic for a given seed.
std::vector<int> scramble_tile_permutation(int rows, int cols, int steps, std::uint64_t seed);

/*
  Four-connected grid with obstacles; start is the top-left cell, goal
  the bottom-right one.  Ids are row-major cell indexes (obstacle cells
  own an id but are never generated).  Heuristic: Manhattan distance to
  the goal cell.  Successor order: up, down, left, right.
*/
class GridNav final : public StateSpace {
public:
    using StateSpace::successors;

    GridNav(int rows, int cols, std::vector<std::uint8_t> obstacles);

    StateId initial() const override { return 0; }
    bool is_goal(StateId s) const override { return s == goal_id_; }
    HValue heuristic(StateId s) const override;
    void successors(StateId s, std::vector<StateId> &out) const override;
    std::optional<StateId> id_bound() const override { return static_cast<StateId>(rows_) * cols_; }
    std::optional<StateId> state_count() const override { return std::nullopt; }
    std::uint64_t fingerprint() const override { return fingerprint_; }
    std::string name() const override { return name_; }

private:
    int rows_, cols_;
    StateId goal_id_;
    std::vector<std::uint8_t> obstacles_;
    std::uint64_t fingerprint_;
    std::string name_;
};

// Obstacles drawn per cell with the given density; regenerates (bounded
// attempts) until the goal is reachable.  Start/goal stay free.
GridNav gen_grid(int rows, int cols, double obstacle_density, std::uint64_t seed);

/*
  Breadth-first materialization of any state space into an explicit
  topology (ids renumbered in discovery order, successor order kept).
  Throws ValidationError when more than `cap` states are reachable.
*/
ExplicitTopology materialize_explicit(const StateSpace &space, StateId cap);

enum class DomainKind { ExplicitFile, SlidingTile, GridNav, PlateauSynthetic, RandomGraph };

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string &s);

/*
  Everything needed to reconstruct one benchmark instance.  A spec
  (including its seed) expands to exactly one state space; the label is
  the instance identity used in benchmark records.
*/
struct DomainSpec {
    DomainKind kind = DomainKind::PlateauSynthetic;
    std::uint64_t seed = 0;

    std::string path; // explicit-file

    int tile_rows = 3, tile_cols = 3; // sliding-tile
    int tile_scramble = 12;
    std::vector<int> tile_perm; // optional explicit arrangement

    int grid_rows = 8, grid_cols = 8; // grid-nav
    double obstacle_density = 0.2;

    int plateau_depth = 4, plateau_width = 3; // plateau-synthetic

    StateId random_states = 20; // random-graph
    double edge_density = 0.15;
    HValue h_max = 8;
    int goal_count = 1;

    std::string label() const;
};

std::shared_ptr<const StateSpace> make_domain(const DomainSpec &spec);

} // namespace psearch
