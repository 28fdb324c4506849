#pragma once

#include <cstddef>
#include <vector>

#include "psearch/engine/trace.hpp"
#include "psearch/oracle/bts.hpp"

namespace psearch {

struct BenchViolation {
    std::size_t event_index; // position in trace.events
    StateId state;           // state popped outside the certified set
};

/*
  Check a run against an independently computed membership set: every
  state the run popped (expansions and the final goal alike) must be a
  member.  Throws ValidationError when the trace and the set come from
  different topologies or when the set is inconclusive — a lower bound
  cannot certify violations.
*/
std::vector<BenchViolation> check_trace_constrained(const SearchTrace &trace,
                                                  const BtsResult &bts);

} // namespace psearch
