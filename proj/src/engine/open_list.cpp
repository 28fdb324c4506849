#include "psearch/engine/open_list.hpp"

#include <stdexcept>

namespace psearch {

const OpenEntry &OpenList::insert(StateId state, HValue h) {
    if (h < 0)
        throw std::logic_error("open list: negative h");
    auto idx = static_cast<std::size_t>(h);
    if (idx >= buckets_.size())
        buckets_.resize(idx + 1);
    buckets_[idx].push_back(OpenEntry{state, h, seq_++});
    if (idx < lowest_)
        lowest_ = idx;
    ++size_;
    if (size_ > peak_)
        peak_ = size_;
    return buckets_[idx].back();
}

const OpenEntry &OpenList::top() const {
    if (size_ == 0)
        throw std::logic_error("open list: top() on empty list");
    while (buckets_[lowest_].empty())
        ++lowest_;
    return buckets_[lowest_].front();
}

OpenEntry OpenList::pop() {
    const OpenEntry entry = top();
    buckets_[lowest_].pop_front();
    --size_;
    return entry;
}

} // namespace psearch
