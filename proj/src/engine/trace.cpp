#include "psearch/engine/trace.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace psearch {

const char *to_string(EventKind kind) {
    switch (kind) {
    case EventKind::PopOpen: return "pop-open";
    case EventKind::Generate: return "generate";
    case EventKind::EvalStart: return "eval-start";
    case EventKind::EvalEnd: return "eval-end";
    case EventKind::OpenInsert: return "open-insert";
    case EventKind::BatchInsert: return "batch-insert";
    case EventKind::UnevalEmpty: return "uneval-empty";
    case EventKind::IdleStart: return "idle-start";
    case EventKind::IdleEnd: return "idle-end";
    case EventKind::GoalFound: return "goal-found";
    case EventKind::Exhausted: return "exhausted";
    case EventKind::LimitHit: return "limit-hit";
    }
    return "?";
}

std::vector<StateId> SearchTrace::expanded_sequence() const {
    std::vector<StateId> out;
    for (const auto &e : events)
        if (e.kind == EventKind::Generate)
            out.push_back(e.state);
    return out;
}

std::vector<StateId> SearchTrace::popped_sequence() const {
    std::vector<StateId> out;
    for (const auto &e : events)
        if (e.kind == EventKind::PopOpen)
            out.push_back(e.state);
    return out;
}

void dump_trace(const SearchTrace &trace, std::ostream &out) {
    out << "# engine=" << trace.engine_label << " fingerprint=" << trace.topology_fingerprint
        << "\n";
    for (const auto &e : trace.events) {
        out << e.t_ns << " w" << e.worker << " " << to_string(e.kind);
        if (e.state != kNoState)
            out << " s=" << e.state;
        out << " a=" << e.a << " b=" << e.b << "\n";
    }
}

std::string trace_to_string(const SearchTrace &trace) {
    std::ostringstream os;
    dump_trace(trace, os);
    return os.str();
}

int peak_simultaneous_evaluations(const SearchTrace &trace) {
    // Sweep eval interval endpoints; starts before ends at equal time so
    // a zero-length overlap still counts as simultaneous.
    std::vector<std::pair<std::int64_t, int>> points;
    for (const auto &e : trace.events) {
        if (e.kind == EventKind::EvalStart)
            points.emplace_back(e.t_ns, +1);
        else if (e.kind == EventKind::EvalEnd)
            points.emplace_back(e.t_ns, -1);
    }
    std::sort(points.begin(), points.end(), [](const auto &x, const auto &y) {
        if (x.first != y.first)
            return x.first < y.first;
        return x.second > y.second;
    });
    int cur = 0, peak = 0;
    for (auto [t, d] : points) {
        cur += d;
        peak = std::max(peak, cur);
    }
    return peak;
}

bool check_eval_uniqueness(const SearchTrace &trace, std::string *why) {
    std::unordered_set<StateId> seen;
    for (const auto &e : trace.events)
        if (e.kind == EventKind::EvalStart && !seen.insert(e.state).second) {
            if (why)
                *why = "state " + std::to_string(e.state) + " evaluated twice";
            return false;
        }
    return true;
}

bool check_batch_atomicity(const SearchTrace &trace, std::string *why) {
    // Inside one batch (OpenInsert ... BatchInsert of the same worker)
    // no other worker may interleave open-list activity.
    std::int32_t batch_worker = -1;
    for (const auto &e : trace.events) {
        const bool open_activity = e.kind == EventKind::OpenInsert ||
                                   e.kind == EventKind::PopOpen ||
                                   e.kind == EventKind::BatchInsert;
        if (!open_activity)
            continue;
        if (batch_worker == -1) {
            if (e.kind == EventKind::OpenInsert)
                batch_worker = e.worker;
        } else {
            if (e.worker != batch_worker) {
                if (why)
                    *why = "worker " + std::to_string(e.worker) +
                           " touched the open list inside another worker's batch";
                return false;
            }
            if (e.kind == EventKind::BatchInsert)
                batch_worker = -1;
        }
    }
    if (batch_worker != -1) {
        if (why)
            *why = "trace ends inside an unterminated batch";
        return false;
    }
    return true;
}

bool check_uneval_precedence(const SearchTrace &trace, std::string *why) {
    // Per worker, the last non-idle event before a PopOpen must be
    // UnevalEmpty; idle bookkeeping between the empty poll and the pop
    // does not invalidate the observation.
    std::unordered_map<std::int32_t, EventKind> last;
    for (const auto &e : trace.events) {
        if (e.kind == EventKind::IdleStart || e.kind == EventKind::IdleEnd)
            continue;
        if (e.kind == EventKind::PopOpen) {
            auto it = last.find(e.worker);
            if (it == last.end() || it->second != EventKind::UnevalEmpty) {
                if (why)
                    *why = "worker " + std::to_string(e.worker) +
                           " popped without observing the evaluation queue empty";
                return false;
            }
        }
        last[e.worker] = e.kind;
    }
    return true;
}

} // namespace psearch
