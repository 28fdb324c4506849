#pragma once

#include <unordered_set>
#include <vector>

#include "psearch/core/topology.hpp"

namespace psearch {

/*
  Insert-only membership set over state ids.  Dense byte vector when the
  id space is small enough, hash set otherwise.  Used for the Closed set
  (states admitted once over a whole run) and for the table that keeps
  separate-evaluation mode from computing a heuristic twice.  Callers
  synchronize.
*/
class StateSet {
public:
    explicit StateSet(std::optional<StateId> id_bound) {
        if (id_bound && *id_bound <= kDenseLimit)
            dense_.assign(static_cast<std::size_t>(*id_bound), 0);
        else
            use_hash_ = true;
    }

    // True when the state was newly inserted.
    bool insert(StateId s) {
        if (use_hash_)
            return hash_.insert(s).second;
        auto &cell = dense_[static_cast<std::size_t>(s)];
        if (cell)
            return false;
        cell = 1;
        ++dense_count_;
        return true;
    }

    bool contains(StateId s) const {
        if (use_hash_)
            return hash_.count(s) != 0;
        return dense_[static_cast<std::size_t>(s)] != 0;
    }

    std::size_t size() const { return use_hash_ ? hash_.size() : dense_count_; }

private:
    static constexpr StateId kDenseLimit = StateId(1) << 22;
    bool use_hash_ = false;
    std::vector<std::uint8_t> dense_;
    std::size_t dense_count_ = 0;
    std::unordered_set<StateId> hash_;
};

} // namespace psearch
