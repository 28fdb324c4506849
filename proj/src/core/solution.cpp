#include "psearch/core/solution.hpp"

#include <algorithm>

namespace psearch {

std::vector<StateId> reconstruct_path(const ParentMap &parents, StateId goal) {
    std::vector<StateId> path{goal};
    StateId cur = goal;
    // A well-formed parent forest can never yield a chain longer than
    // the number of links, so anything past that bound is a cycle.
    const std::size_t bound = parents.size() + 1;
    while (true) {
        StateId p = parents.get(cur);
        if (p == kNoState)
            break;
        path.push_back(p);
        cur = p;
        if (path.size() > bound)
            throw std::logic_error("parent links form a cycle");
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool validate_path(const StateSpace &space, const std::vector<StateId> &path, std::string *why) {
    auto fail = [&](const std::string &msg) {
        if (why)
            *why = msg;
        return false;
    };
    if (path.empty())
        return fail("path is empty");
    if (path.front() != space.initial())
        return fail("path does not start at the initial state");
    if (!space.is_goal(path.back()))
        return fail("path does not end in a goal state");
    std::vector<StateId> succ;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        space.successors(path[i], succ);
        if (std::find(succ.begin(), succ.end(), path[i + 1]) == succ.end())
            return fail("step " + std::to_string(i) + " does not follow a successor edge");
    }
    return true;
}

} // namespace psearch
