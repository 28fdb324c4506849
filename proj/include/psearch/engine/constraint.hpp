#pragma once

#include <string>
#include <vector>

#include "psearch/core/topology.hpp"
#include "psearch/engine/open_list.hpp"

namespace psearch {

/*
  Bookkeeping for expansions that have been popped from Open but whose
  sibling batch has not been inserted yet.  The engine mutates it in the
  same exclusive section as the Open pop / batch insertion, so a
  constraint always sees a snapshot consistent with the pop it gates.

  min_known_pending_h tracks the smallest h among this expansion's
  already-evaluated, not-yet-inserted successors; successors still
  awaiting evaluation have no h to report and impose nothing.
*/
struct InflightExpansion {
    StateId parent;
    HValue parent_h;
    HValue min_known_pending_h; // kHInfinity until a member's h is known
};

class InflightRegistry {
public:
    void start(StateId parent, HValue parent_h) {
        entries_.push_back({parent, parent_h, kHInfinity});
    }

    void note_known_h(StateId parent, HValue h) {
        for (auto &e : entries_)
            if (e.parent == parent) {
                if (h < e.min_known_pending_h)
                    e.min_known_pending_h = h;
                return;
            }
    }

    void finish(StateId parent) {
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].parent == parent) {
                entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(i));
                return;
            }
    }

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<InflightExpansion> &entries() const { return entries_; }

private:
    std::vector<InflightExpansion> entries_; // at most k, scanned linearly
};

/*
  Gate on popping the best Open entry.  Called with the Open exclusive
  section held (the registry is maintained under the same section), so
  implementations may read both without further synchronization but
  must not block.  Drop-in replacements plug in via EngineConfig.
*/
class ExpansionConstraint {
public:
    virtual ~ExpansionConstraint() = default;
    virtual std::string label() const = 0;
    virtual bool satisfies(const OpenEntry &candidate, const InflightRegistry &reg) const = 0;
};

// Always pop: the unconstrained shared-open engine.
class NoConstraint final : public ExpansionConstraint {
public:
    std::string label() const override { return "none"; }
    bool satisfies(const OpenEntry &, const InflightRegistry &) const override { return true; }
};

/*
  Pop the candidate only while its h is no worse than (a) the h of every
  state currently being expanded and (b) every known h among successors
  those expansions have evaluated but not yet batch-inserted.  Both
  parts hold vacuously when nothing is in flight.  This is the engine's
  bench-safety gate; its guarantee is established empirically against
  the brute-force oracle, not by proof.
*/
class InflightMinHConstraint final : public ExpansionConstraint {
public:
    std::string label() const override { return "inflight-minh"; }
    bool satisfies(const OpenEntry &candidate, const InflightRegistry &reg) const override {
        for (const auto &e : reg.entries()) {
            if (candidate.h > e.parent_h)
                return false;
            if (candidate.h > e.min_known_pending_h)
                return false;
        }
        return true;
    }
};

const ExpansionConstraint &no_constraint();
const ExpansionConstraint &inflight_minh_constraint();

} // namespace psearch
