#pragma once

#include <vector>

#include "psearch/core/topology.hpp"

namespace psearch {

/*
  High-water mark of each state: the smallest, over all paths from the
  state to a goal, of the largest heuristic value met along the path
  (the state itself included).  Equivalently the least fixpoint of

      hwm(goal) = 0
      hwm(s)    = max(h(s), min over successors t of hwm(t))

  States that cannot reach a goal get kHInfinity.  Computed exactly by
  a Dijkstra sweep from the goals over reversed edges, with max taking
  the role of addition and min of selection.
*/
std::vector<HValue> high_water_marks(const ExplicitTopology &topo);

} // namespace psearch
