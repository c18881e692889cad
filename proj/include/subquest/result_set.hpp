#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "subquest/error.hpp"
#include "subquest/priority.hpp"

namespace subquest {

/// Top-k result set. Entries are kept in descending priority order, ties in
/// arrival order. Entries tied at the k-th priority are all retained, so
/// `size()` may exceed `k()`.
template <class T>
class ResultSet {
 public:
  struct Entry {
    T item;
    Priority priority;
    std::uint64_t arrival = 0;
  };

  explicit ResultSet(std::size_t k) : k_(k) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  bool full() const noexcept { return entries_.size() >= k_; }

  /// The entry at rank k. Only valid when `full()`.
  const Entry& kth() const { return entries_.at(k_ - 1); }

  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// Would `offer(_, p)` insert?
  bool admits(const Priority& p) const {
    check_arity(p);
    return !full() || p >= kth().priority;
  }

  /// Inserts when the set is not full or `p` is at least the k-th priority,
  /// then evicts everything strictly below the new k-th priority.
  bool offer(T item, const Priority& p) {
    if (!admits(p)) return false;
    if (entries_.empty()) arity_ = p.arity();
    auto pos = std::upper_bound(entries_.begin(), entries_.end(), p,
                                [](const Priority& x, const Entry& e) { return x > e.priority; });
    entries_.insert(pos, Entry{std::move(item), p, next_arrival_++});
    if (entries_.size() > k_) {
      const Priority bound = entries_[k_ - 1].priority;
      auto cut = std::find_if(entries_.begin() + static_cast<std::ptrdiff_t>(k_), entries_.end(),
                              [&](const Entry& e) { return e.priority < bound; });
      entries_.erase(cut, entries_.end());
    }
    return true;
  }

 private:
  void check_arity(const Priority& p) const {
    if (!entries_.empty() && p.arity() != arity_) {
      throw ArityError("priority arity mismatch in result set");
    }
  }

  std::size_t k_;
  std::vector<Entry> entries_;
  std::size_t arity_ = 0;
  std::uint64_t next_arrival_ = 0;
};

}  // namespace subquest
