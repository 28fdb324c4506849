#pragma once

#include <deque>
#include <memory>
#include <vector>

#include "psearch/core/topology.hpp"

namespace psearch {

/*
  Separate-evaluation bookkeeping: one expansion's successors travel as
  a group from generation through evaluation to a single batch insertion
  performed by whichever worker evaluates the last member.  `computed`
  distinguishes members whose heuristic was actually computed here from
  ones satisfied by the reevaluation-prevention table — only computed
  members that then lose the Closed race count as wasted work.
*/
struct SiblingMember {
    StateId state;
    HValue h = -1;
    bool computed = false;
};

struct SiblingGroup {
    StateId parent = kNoState;
    HValue parent_h = -1;
    std::vector<SiblingMember> members;
    int remaining = 0; // members not yet evaluated
};

/*
  FIFO of (group, member) work items shared by all workers; evaluation
  work always takes precedence over expansion.  Groups live in an arena
  owned by the runtime for the whole run, so raw pointers here stay
  valid.  Callers synchronize.
*/
class UnevaluatedQueue {
public:
    struct Item {
        SiblingGroup *group;
        std::size_t member;
    };

    void push(SiblingGroup *group, std::size_t member) { items_.push_back({group, member}); }
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

    Item pop() {
        Item it = items_.front();
        items_.pop_front();
        return it;
    }

private:
    std::deque<Item> items_;
};

} // namespace psearch
