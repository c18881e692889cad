#pragma once

#include <concepts>
#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <vector>

#include "subquest/priority.hpp"

namespace subquest {

template <class T>
struct QueueEntry {
  T item;
  Priority priority;
};

template <class Q, class T>
concept SubgraphQueue = requires(Q q, T item, const Priority& p) {
  q.push(std::move(item), p);
  { q.pop() } -> std::same_as<std::optional<QueueEntry<T>>>;
  { q.empty() } -> std::convertible_to<bool>;
};

namespace detail {

/// Heap order: higher priority first, then earlier sequence number.
struct HeapOrder {
  template <class Node>
  bool operator()(const Node& a, const Node& b) const {
    auto c = compare(a.priority, b.priority);
    if (c != 0) return c < 0;
    return a.seq > b.seq;
  }
};

}  // namespace detail

/// Unbounded in-memory max-priority queue; equal priorities leave in
/// insertion order.
template <class T>
class HeapQueue {
 public:
  void push(T item, const Priority& p) { heap_.push(Node{p, next_seq_++, std::move(item)}); }

  std::optional<QueueEntry<T>> pop() {
    if (heap_.empty()) return std::nullopt;
    // priority_queue::top is const; the node is discarded right after.
    auto& top = const_cast<Node&>(heap_.top());
    QueueEntry<T> out{std::move(top.item), top.priority};
    heap_.pop();
    return out;
  }

  bool empty() const noexcept { return heap_.empty(); }
  std::size_t size() const noexcept { return heap_.size(); }

 private:
  struct Node {
    Priority priority;
    std::uint64_t seq;
    T item;
  };
  std::priority_queue<Node, std::vector<Node>, detail::HeapOrder> heap_;
  std::uint64_t next_seq_ = 0;
};

/// Ignores priorities entirely (the no-prioritization baseline).
template <class T>
class FifoQueue {
 public:
  void push(T item, const Priority& p) { items_.push_back({std::move(item), p}); }

  std::optional<QueueEntry<T>> pop() {
    if (items_.empty()) return std::nullopt;
    auto out = std::move(items_.front());
    items_.pop_front();
    return out;
  }

  bool empty() const noexcept { return items_.empty(); }
  std::size_t size() const noexcept { return items_.size(); }

 private:
  std::deque<QueueEntry<T>> items_;
};

}  // namespace subquest
