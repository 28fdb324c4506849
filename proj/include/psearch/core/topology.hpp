#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace psearch {

using StateId = std::int64_t;
using HValue = std::int64_t;

// Sentinel for "no state" (e.g. the parent of the initial state).
inline constexpr StateId kNoState = -1;

// Sentinel for an unbounded/unknown heuristic value (used by the
// high-water-mark computation, never stored in a topology).
inline constexpr HValue kHInfinity = std::numeric_limits<HValue>::max();

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/*
  A state space as the search engines see it: one initial state, goal
  predicate, non-negative integer heuristic, ordered successor lists.
  Implementations must be immutable after construction; all const
  methods are safe to call concurrently from many workers.

  Successor order is meaningful: it is the order in which an expansion
  generates (and a batch insertion enqueues) the children, which is what
  FIFO tie-breaking ultimately sees.
*/
class StateSpace {
public:
    virtual ~StateSpace() = default;

    virtual StateId initial() const = 0;
    virtual bool is_goal(StateId s) const = 0;
    virtual HValue heuristic(StateId s) const = 0;
    virtual void successors(StateId s, std::vector<StateId> &out) const = 0;

    // Exclusive upper bound on state ids, when the space knows one
    // (explicit tables and fixed-size implicit spaces do; ids are then
    // in [0, bound)).  nullopt means the id space is unbounded.
    virtual std::optional<StateId> id_bound() const = 0;

    // Number of actual states for explicitly materialized spaces,
    // nullopt for implicit ones.
    virtual std::optional<StateId> state_count() const = 0;

    // Stable across processes for equal spaces; used to tie search
    // traces and oracle outputs to the topology they were made from.
    virtual std::uint64_t fingerprint() const = 0;

    virtual std::string name() const = 0;

    std::vector<StateId> successors(StateId s) const {
        std::vector<StateId> out;
        successors(s, out);
        return out;
    }
};

// Plain aggregate a topology is built from; ExplicitTopology validates it.
struct TopologyData {
    StateId init = 0;
    std::vector<HValue> h;                  // indexed by state id
    std::vector<std::uint8_t> goal;         // indexed by state id
    std::vector<std::vector<StateId>> succ; // indexed by state id, ordered
};

/*
  Fully materialized state space backed by vectors.  Construction
  enforces the topology invariants:
    - at least one state, ids contiguous from 0 (implied by the vectors);
    - init in range, at least one goal state;
    - goal states have h == 0 and an empty successor list;
    - all h non-negative;
    - successor ids in range, no self-loops, no duplicate successor entries.
*/
class ExplicitTopology final : public StateSpace {
public:
    using StateSpace::successors;

    explicit ExplicitTopology(TopologyData data, std::string name = "");

    StateId initial() const override { return data_.init; }
    bool is_goal(StateId s) const override { return data_.goal[static_cast<std::size_t>(s)] != 0; }
    HValue heuristic(StateId s) const override { return data_.h[static_cast<std::size_t>(s)]; }
    void successors(StateId s, std::vector<StateId> &out) const override {
        const auto &list = data_.succ[static_cast<std::size_t>(s)];
        out.assign(list.begin(), list.end());
    }
    std::optional<StateId> id_bound() const override { return num_states(); }
    std::optional<StateId> state_count() const override { return num_states(); }
    std::uint64_t fingerprint() const override { return fingerprint_; }
    std::string name() const override { return name_; }

    StateId num_states() const { return static_cast<StateId>(data_.h.size()); }
    const std::vector<StateId> &successor_list(StateId s) const {
        return data_.succ[static_cast<std::size_t>(s)];
    }
    const TopologyData &data() const { return data_; }

    // Structural equality; the name is presentation only and ignored.
    bool operator==(const ExplicitTopology &other) const;

private:
    TopologyData data_;
    std::string name_;
    std::uint64_t fingerprint_ = 0;
};

} // namespace psearch
