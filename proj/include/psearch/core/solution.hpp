#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "psearch/core/topology.hpp"

namespace psearch {

/*
  Parent links written once per admitted state during search.  Dense
  vector storage when the id space is small, hash map otherwise; the
  engines pick via ParentMap(space.id_bound()).
*/
class ParentMap {
public:
    explicit ParentMap(std::optional<StateId> id_bound) {
        if (id_bound && *id_bound <= kDenseLimit) {
            dense_ = true;
            vec_.assign(static_cast<std::size_t>(*id_bound), kUnset);
        }
    }

    void set(StateId child, StateId parent) {
        if (dense_)
            vec_[static_cast<std::size_t>(child)] = parent;
        else
            map_[child] = parent;
    }

    bool contains(StateId child) const {
        if (dense_)
            return vec_[static_cast<std::size_t>(child)] != kUnset;
        return map_.count(child) != 0;
    }

    // Parent of `child`; kNoState marks the root.  Asking about a state
    // that was never admitted is a logic error in the caller.
    StateId get(StateId child) const {
        if (dense_) {
            StateId p = vec_[static_cast<std::size_t>(child)];
            if (p == kUnset)
                throw std::logic_error("parent link missing for state " + std::to_string(child));
            return p;
        }
        auto it = map_.find(child);
        if (it == map_.end())
            throw std::logic_error("parent link missing for state " + std::to_string(child));
        return it->second;
    }

    std::size_t size() const { return dense_ ? vec_.size() : map_.size(); }

private:
    static constexpr StateId kUnset = -2;
    static constexpr StateId kDenseLimit = StateId(1) << 22;
    bool dense_ = false;
    std::vector<StateId> vec_;
    std::unordered_map<StateId, StateId> map_;
};

/*
  Walk parent links from the goal back to the root (parent == kNoState)
  and return the forward path.  A missing link or a cycle means the
  engine corrupted its bookkeeping: that throws std::logic_error rather
  than returning a bad path.
*/
std::vector<StateId> reconstruct_path(const ParentMap &parents, StateId goal);

// A path is valid when it starts at the initial state, ends in a goal,
// and every step follows a successor edge.  On failure `why` (if given)
// says which check failed.
bool validate_path(const StateSpace &space, const std::vector<StateId> &path,
                   std::string *why = nullptr);

} // namespace psearch
