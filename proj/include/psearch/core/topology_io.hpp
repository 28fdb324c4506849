#pragma once

#include <iosfwd>
#include <string>

#include "psearch/core/topology.hpp"

namespace psearch {

/*
  Line-oriented topology file format:

      # comment (blank lines also ignored)
      state <id> h=<int> [init] [goal]
      edge <from> <to>

  Every state must be declared by exactly one "state" line; ids must be
  contiguous from 0.  Exactly one state carries the init flag and at
  least one the goal flag.  Edge file order defines successor order.
  Parse and validation errors throw ParseError with the line number.
*/
ExplicitTopology load_topology(std::istream &in, std::string name = "");
ExplicitTopology load_topology_file(const std::string &path);

// Canonical form: states ascending, then edges grouped by source in
// successor order.  Equal topologies serialize to identical bytes.
void save_topology(const ExplicitTopology &topo, std::ostream &out);
void save_topology_file(const ExplicitTopology &topo, const std::string &path);
std::string topology_to_string(const ExplicitTopology &topo);

// FNV-1a over the canonical serialization of the structural data.
std::uint64_t topology_fingerprint(const TopologyData &data);

} // namespace psearch
