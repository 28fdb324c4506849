#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "psearch/core/topology.hpp"

namespace psearch {

struct OpenEntry {
    StateId state;
    HValue h;
    std::uint64_t seq; // global insertion order, assigned by the list
};

/*
  Bucket open list ordered by (h, insertion sequence): pop returns the
  earliest-inserted entry of the lowest non-empty h bucket, which is
  exactly FIFO tie-breaking.  Sequence numbers are assigned here, at
  insertion, under whatever exclusive section the caller holds — batch
  insertions therefore enter in successor-list order.  The list itself
  does no locking.
*/
class OpenList {
public:
    const OpenEntry &insert(StateId state, HValue h);
    bool empty() const { return size_ == 0; }
    std::size_t size() const { return size_; }
    std::size_t peak_size() const { return peak_; }
    std::uint64_t total_inserted() const { return seq_; }

    // Lowest (h, seq) entry; callers must check empty() first.
    const OpenEntry &top() const;
    OpenEntry pop();

private:
    std::vector<std::deque<OpenEntry>> buckets_;
    mutable std::size_t lowest_ = 0;
    std::size_t size_ = 0;
    std::size_t peak_ = 0;
    std::uint64_t seq_ = 0;
};

} // namespace psearch
