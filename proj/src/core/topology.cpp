#include "psearch/core/topology.hpp"

#include <string>
#include <unordered_set>

#include "psearch/core/topology_io.hpp"

namespace psearch {

namespace {

void validate(const TopologyData &d) {
    const std::size_t n = d.h.size();
    if (n == 0)
        throw ValidationError("topology has no states");
    if (d.goal.size() != n || d.succ.size() != n)
        throw ValidationError("topology arrays disagree on state count");
    if (d.init < 0 || static_cast<std::size_t>(d.init) >= n)
        throw ValidationError("initial state id out of range");

    bool any_goal = false;
    for (std::size_t s = 0; s < n; ++s) {
        if (d.h[s] < 0)
            throw ValidationError("state " + std::to_string(s) + " has negative h");
        if (d.goal[s]) {
            any_goal = true;
            if (d.h[s] != 0)
                throw ValidationError("goal state " + std::to_string(s) + " has h != 0");
            if (!d.succ[s].empty())
                throw ValidationError("goal state " + std::to_string(s) + " has successors");
        }
        std::unordered_set<StateId> seen;
        for (StateId t : d.succ[s]) {
            if (t < 0 || static_cast<std::size_t>(t) >= n)
                throw ValidationError("successor id out of range for state " + std::to_string(s));
            if (t == static_cast<StateId>(s))
                throw ValidationError("self-loop on state " + std::to_string(s));
            if (!seen.insert(t).second)
                throw ValidationError("duplicate successor " + std::to_string(t) + " of state " +
                                      std::to_string(s));
        }
    }
    if (!any_goal)
        throw ValidationError("topology has no goal state");
}

} // namespace

ExplicitTopology::ExplicitTopology(TopologyData data, std::string name)
    : data_(std::move(data)), name_(std::move(name)) {
    validate(data_);
    fingerprint_ = topology_fingerprint(data_);
}

bool ExplicitTopology::operator==(const ExplicitTopology &other) const {
    return data_.init == other.data_.init && data_.h == other.data_.h &&
           data_.goal == other.data_.goal && data_.succ == other.data_.succ;
}

} // namespace psearch
