#include "psearch/oracle/hwm.hpp"

#include <algorithm>
#include <queue>

namespace psearch {

std::vector<HValue> high_water_marks(const ExplicitTopology &topo) {
    const auto n = static_cast<std::size_t>(topo.num_states());

    std::vector<std::vector<StateId>> pred(n);
    for (StateId s = 0; s < topo.num_states(); ++s)
        for (StateId t : topo.successor_list(s))
            pred[static_cast<std::size_t>(t)].push_back(s);

    std::vector<HValue> hwm(n, kHInfinity);
    std::vector<std::uint8_t> settled(n, 0);

    using Item = std::pair<HValue, StateId>; // (candidate hwm, state)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (StateId s = 0; s < topo.num_states(); ++s)
        if (topo.is_goal(s)) {
            hwm[static_cast<std::size_t>(s)] = 0;
            pq.push({0, s});
        }

    // Standard Dijkstra argument: the relaxation value max(h(p), d) is
    // no smaller than d, so states settle in non-decreasing hwm order.
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        auto ui = static_cast<std::size_t>(u);
        if (settled[ui])
            continue;
        settled[ui] = 1;
        for (StateId p : pred[ui]) {
            const auto pi = static_cast<std::size_t>(p);
            const HValue cand = std::max(topo.heuristic(p), d);
            if (cand < hwm[pi]) {
                hwm[pi] = cand;
                pq.push({cand, p});
            }
        }
    }
    return hwm;
}

} // namespace psearch
