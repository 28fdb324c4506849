#include "psearch/oracle/trace_check.hpp"

namespace psearch {

std::vector<BenchViolation> check_trace_constrained(const SearchTrace &trace,
                                                  const BtsResult &bts) {
    if (trace.topology_fingerprint != bts.topology_fingerprint)
        throw ValidationError("trace and membership set come from different topologies");
    if (!bts.conclusive)
        throw ValidationError("membership set is inconclusive (enumeration budget ran out)");

    std::vector<BenchViolation> out;
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const TraceEvent &e = trace.events[i];
        if (e.kind == EventKind::PopOpen && !bts.contains(e.state))
            out.push_back({i, e.state});
    }
    return out;
}

} // namespace psearch
