#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psearch/core/topology.hpp"

namespace psearch {

/*
  The set of states some sequential greedy best-first run can pop: for
  every way of breaking ties among lowest-h open states there is a run,
  and a state belongs to the set when at least one run pops it (a goal
  counts when some run pops it, even though popping a goal ends the run
  without expanding it).

  Two independent computations of the same set:

   - bts_enumerate walks the full nondeterministic-choice tree over
     (expanded, open) configurations, sharing repeated configurations.
     Exact by construction but exponential in the worst case, so it
     carries a step budget; `conclusive` is false when the budget ran
     out and `members` is then only a lower bound.

   - bts_via_hwm builds the set structurally from high-water marks,
     growing plateau regions from progress states.  Always conclusive
     and fast, but derived; its agreement with the enumeration is a
     test obligation, not an assumption.
*/
struct BtsResult {
    std::vector<StateId> members; // sorted ascending
    std::uint64_t topology_fingerprint = 0;
    std::string method;
    bool conclusive = true;
    std::uint64_t steps = 0;  // enumeration work actually spent
    std::uint64_t budget = 0; // limit it was given

    bool contains(StateId s) const;
};

// Exhaustive enumeration; requires at most 64 states (the configuration
// key packs the expanded and open sets into one bit mask each).
BtsResult bts_enumerate(const ExplicitTopology &topo, std::uint64_t budget = 10'000'000);

// Structural construction from high-water marks.
BtsResult bts_via_hwm(const ExplicitTopology &topo);

} // namespace psearch
