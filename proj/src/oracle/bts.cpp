#include "psearch/oracle/bts.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "psearch/oracle/hwm.hpp"

namespace psearch {

bool BtsResult::contains(StateId s) const {
    return std::binary_search(members.begin(), members.end(), s);
}

namespace {

std::vector<StateId> mask_to_sorted(std::uint64_t mask) {
    std::vector<StateId> out;
    for (StateId s = 0; mask != 0; ++s, mask >>= 1)
        if (mask & 1)
            out.push_back(s);
    return out;
}

struct Config {
    std::uint64_t expanded;
    std::uint64_t open;
    bool operator==(const Config &o) const { return expanded == o.expanded && open == o.open; }
};

struct ConfigHash {
    std::size_t operator()(const Config &c) const {
        std::uint64_t x = c.expanded * 0x9e3779b97f4a7c15ull;
        x ^= c.open + 0x9e3779b97f4a7c15ull + (x << 6) + (x >> 2);
        return static_cast<std::size_t>(x);
    }
};

std::vector<StateId> reachable_sorted(const ExplicitTopology &topo) {
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(topo.num_states()), 0);
    std::deque<StateId> frontier{topo.initial()};
    seen[static_cast<std::size_t>(topo.initial())] = 1;
    while (!frontier.empty()) {
        const StateId s = frontier.front();
        frontier.pop_front();
        for (StateId t : topo.successor_list(s))
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = 1;
                frontier.push_back(t);
            }
    }
    std::vector<StateId> out;
    for (StateId s = 0; s < topo.num_states(); ++s)
        if (seen[static_cast<std::size_t>(s)])
            out.push_back(s);
    return out;
}

} // namespace

BtsResult bts_enumerate(const ExplicitTopology &topo, std::uint64_t budget) {
    const StateId n = topo.num_states();
    if (n > 64)
        throw ValidationError("enumeration supports at most 64 states; topology has " +
                              std::to_string(n));

    std::vector<std::uint64_t> succ_mask(static_cast<std::size_t>(n), 0);
    for (StateId s = 0; s < n; ++s)
        for (StateId t : topo.successor_list(s))
            succ_mask[static_cast<std::size_t>(s)] |= std::uint64_t(1) << t;

    BtsResult out;
    out.topology_fingerprint = topo.fingerprint();
    out.method = "enumerate";
    out.budget = budget;

    std::uint64_t member_mask = 0;
    std::unordered_set<Config, ConfigHash> visited;
    std::vector<Config> stack;

    const Config start{0, std::uint64_t(1) << topo.initial()};
    visited.insert(start);
    stack.push_back(start);

    while (!stack.empty()) {
        const Config cfg = stack.back();
        stack.pop_back();
        if (cfg.open == 0)
            continue; // this run exhausted its open list

        HValue best = kHInfinity;
        for (std::uint64_t m = cfg.open; m != 0; m &= m - 1) {
            const auto s = static_cast<StateId>(__builtin_ctzll(m));
            best = std::min(best, topo.heuristic(s));
        }

        // One branch per lowest-h state: some tie-breaking pops it here.
        for (std::uint64_t m = cfg.open; m != 0; m &= m - 1) {
            const auto s = static_cast<StateId>(__builtin_ctzll(m));
            if (topo.heuristic(s) != best)
                continue;
            if (++out.steps > budget) {
                out.conclusive = false;
                out.members = mask_to_sorted(member_mask);
                return out;
            }
            member_mask |= std::uint64_t(1) << s;
            if (topo.is_goal(s))
                continue; // popping a goal ends the run
            const std::uint64_t expanded = cfg.expanded | (std::uint64_t(1) << s);
            const std::uint64_t open_rest = cfg.open & ~(std::uint64_t(1) << s);
            const std::uint64_t fresh =
                succ_mask[static_cast<std::size_t>(s)] & ~(cfg.open | expanded);
            const Config next{expanded, open_rest | fresh};
            if (visited.insert(next).second)
                stack.push_back(next);
        }
    }

    out.members = mask_to_sorted(member_mask);
    return out;
}

BtsResult bts_via_hwm(const ExplicitTopology &topo) {
    const StateId n = topo.num_states();
    const auto ns = static_cast<std::size_t>(n);

    BtsResult out;
    out.topology_fingerprint = topo.fingerprint();
    out.method = "hwm";

    const std::vector<HValue> hwm = high_water_marks(topo);

    // Unsolvable instance: every run drains the whole reachable region
    // before giving up, so every reachable state gets popped.
    if (hwm[static_cast<std::size_t>(topo.initial())] == kHInfinity) {
        out.members = reachable_sorted(topo);
        return out;
    }

    std::vector<HValue> hwm_succ(ns, kHInfinity);
    for (StateId s = 0; s < n; ++s)
        for (StateId t : topo.successor_list(s))
            hwm_succ[static_cast<std::size_t>(s)] =
                std::min(hwm_succ[static_cast<std::size_t>(s)], hwm[static_cast<std::size_t>(t)]);

    // A progress state strictly improves the reachable high-water mark
    // in one step; everything else (plateau states, dead regions, all
    // goals) is non-progress.
    std::vector<std::uint8_t> progress(ns, 0);
    for (StateId s = 0; s < n; ++s)
        if (!topo.is_goal(s) && hwm[static_cast<std::size_t>(s)] != kHInfinity &&
            hwm[static_cast<std::size_t>(s)] > hwm_succ[static_cast<std::size_t>(s)])
            progress[static_cast<std::size_t>(s)] = 1;

    std::vector<std::uint8_t> member(ns, 0);
    std::vector<std::uint8_t> rooted(ns, 0); // progress states whose region was grown
    std::deque<StateId> roots;

    // Grow one plateau region: every non-progress state reachable from
    // the entry candidates through non-progress states with h within
    // the level joins; progress states sitting exactly at the level are
    // the exits where the next regions start.
    auto grow = [&](const std::vector<StateId> &entry, HValue level) {
        std::vector<std::uint8_t> seen(ns, 0);
        std::deque<StateId> frontier;
        auto consider = [&](StateId v) {
            if (seen[static_cast<std::size_t>(v)])
                return;
            seen[static_cast<std::size_t>(v)] = 1;
            if (progress[static_cast<std::size_t>(v)]) {
                if (topo.heuristic(v) == level) {
                    member[static_cast<std::size_t>(v)] = 1;
                    if (!rooted[static_cast<std::size_t>(v)]) {
                        rooted[static_cast<std::size_t>(v)] = 1;
                        roots.push_back(v);
                    }
                }
                return; // regions never continue through progress states
            }
            if (topo.heuristic(v) <= level) {
                member[static_cast<std::size_t>(v)] = 1;
                frontier.push_back(v);
            }
        };
        for (StateId v : entry)
            consider(v);
        while (!frontier.empty()) {
            const StateId u = frontier.front();
            frontier.pop_front();
            for (StateId t : topo.successor_list(u))
                consider(t);
        }
    };

    // Virtual start: a region entered at the initial state whose level
    // is the initial state's own high-water mark.
    grow({topo.initial()}, hwm[static_cast<std::size_t>(topo.initial())]);
    while (!roots.empty()) {
        const StateId r = roots.front();
        roots.pop_front();
        grow(topo.successor_list(r), hwm_succ[static_cast<std::size_t>(r)]);
    }

    for (StateId s = 0; s < n; ++s)
        if (member[static_cast<std::size_t>(s)])
            out.members.push_back(s);
    return out;
}

} // namespace psearch
