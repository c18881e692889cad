#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "subquest/graph.hpp"
#include "subquest/priority.hpp"
#include "subquest/queues.hpp"
#include "subquest/result_set.hpp"

namespace subquest {

struct ExplorationStats {
  /// Subgraphs constructed, unit subgraphs included.
  std::uint64_t candidate_subgraphs = 0;
  /// Dequeued items not expanded because they were dominated by the k-th result.
  std::uint64_t pruned_at_parent = 0;
  /// Constructed children (or child groups) dropped before enqueueing.
  std::uint64_t pruned_at_child = 0;
  std::uint64_t dequeues = 0;

  friend bool operator==(const ExplorationStats&, const ExplorationStats&) = default;
};

struct RunOptions {
  /// When false, `dominated` is treated as always false.
  bool use_domination = true;
};

/// Optional observation points; unset callbacks cost nothing.
template <class T>
struct RunHooks {
  std::function<void(const T&, const Priority&)> on_dequeue;
  std::function<void(const T&)> on_parent_pruned;
  std::function<void(const T& parent, const T& child, bool enqueued)> on_child;
};

template <class T>
struct RunResult {
  ResultSet<T> results;
  ExplorationStats stats;
};

/// Contract of a non-aggregate computation. `expandable`, `priority` and
/// `dominated` are optional and default to true, an empty priority and false.
template <class C>
concept BasicComputation = requires(const C& c, const Graph& g,
                                    const typename C::subgraph_type& s,
                                    const typename C::delta_type& d) {
  { c.units(g) } -> std::same_as<std::vector<typename C::subgraph_type>>;
  { c.expansions(g, s) } -> std::same_as<std::vector<typename C::delta_type>>;
  { c.expand(g, s, d) } -> std::same_as<typename C::subgraph_type>;
  { c.relevant(s) } -> std::convertible_to<bool>;
};

/// Contract of an aggregate computation: subgraphs are grouped by `key`, and
/// relevance, priority and domination apply to groups.
template <class C>
concept AggregateComputation = requires(const C& c, const Graph& g,
                                        const typename C::subgraph_type& s,
                                        typename C::subgraph_type&& moved,
                                        const typename C::delta_type& d,
                                        const typename C::key_type& key,
                                        typename C::group_type& grp,
                                        const typename C::group_type& cgrp) {
  { c.units(g) } -> std::same_as<std::vector<typename C::subgraph_type>>;
  { c.key(s) } -> std::same_as<typename C::key_type>;
  { c.make_group(key) } -> std::same_as<typename C::group_type>;
  c.add_member(grp, std::move(moved));
  { c.members(cgrp) } -> std::convertible_to<const std::vector<typename C::subgraph_type>&>;
  { c.expansions(g, s) } -> std::same_as<std::vector<typename C::delta_type>>;
  { c.expand(g, s, d) } -> std::same_as<typename C::subgraph_type>;
  { c.relevant(cgrp) } -> std::convertible_to<bool>;
};

namespace detail {

template <class C, class S, class D>
bool call_expandable(const C& c, const Graph& g, const S& s, const D& d) {
  if constexpr (requires { { c.expandable(g, s, d) } -> std::convertible_to<bool>; }) {
    return c.expandable(g, s, d);
  } else {
    return true;
  }
}

template <class C, class X>
Priority call_priority(const C& c, const X& x) {
  if constexpr (requires { { c.priority(x) } -> std::convertible_to<Priority>; }) {
    return c.priority(x);
  } else {
    return Priority{};
  }
}

template <class C, class X>
bool call_dominated(const C& c, const X& x, const X& y) {
  if constexpr (requires { { c.dominated(x, y) } -> std::convertible_to<bool>; }) {
    return c.dominated(x, y);
  } else {
    return false;
  }
}

class ArityGuard {
 public:
  const Priority& check(const Priority& p) {
    if (!arity_) {
      arity_ = p.arity();
    } else if (*arity_ != p.arity()) {
      throw ArityError("computation produced priorities of arity " + std::to_string(*arity_) +
                       " and " + std::to_string(p.arity()));
    }
    return p;
  }

 private:
  std::optional<std::size_t> arity_;
};

/// Groups in first-insertion order so that enqueue order is deterministic.
template <class Key, class Group>
class Aggregator {
 public:
  template <class Make>
  Group& at(const Key& key, Make&& make) {
    auto [it, inserted] = index_.try_emplace(key, groups_.size());
    if (inserted) groups_.push_back(make(key));
    return groups_[it->second];
  }

  std::vector<Group>& groups() noexcept { return groups_; }

 private:
  std::map<Key, std::size_t> index_;
  std::vector<Group> groups_;
};

}  // namespace detail

/// Basic computational model: seed unit subgraphs, then repeatedly dequeue
/// the highest-priority subgraph, offer it to the result set, and expand it
/// unless the k-th result dominates it. Children dominated by the k-th result
/// are dropped before enqueueing.
template <BasicComputation C, SubgraphQueue<typename C::subgraph_type> Queue>
RunResult<typename C::subgraph_type> run_basic(const Graph& g, const C& c, std::size_t k,
                                               Queue& queue, const RunOptions& options = {},
                                               const RunHooks<typename C::subgraph_type>& hooks = {}) {
  using S = typename C::subgraph_type;
  RunResult<S> run{ResultSet<S>(k), {}};
  auto& results = run.results;
  auto& stats = run.stats;
  detail::ArityGuard arity;

  auto dominated_by_kth = [&](const S& s) {
    return options.use_domination && results.full() &&
           detail::call_dominated(c, s, results.kth().item);
  };

  for (auto& unit : c.units(g)) {
    ++stats.candidate_subgraphs;
    auto p = arity.check(detail::call_priority(c, unit));
    queue.push(std::move(unit), p);
  }

  while (auto top = queue.pop()) {
    ++stats.dequeues;
    S& s = top->item;
    if (hooks.on_dequeue) hooks.on_dequeue(s, top->priority);
    if (c.relevant(s) && results.admits(top->priority)) results.offer(s, top->priority);
    if (dominated_by_kth(s)) {
      ++stats.pruned_at_parent;
      if (hooks.on_parent_pruned) hooks.on_parent_pruned(s);
      continue;
    }
    for (const auto& delta : c.expansions(g, s)) {
      if (!detail::call_expandable(c, g, s, delta)) continue;
      S child = c.expand(g, s, delta);
      ++stats.candidate_subgraphs;
      const bool keep = !dominated_by_kth(child);
      if (hooks.on_child) hooks.on_child(s, child, keep);
      if (!keep) {
        ++stats.pruned_at_child;
        continue;
      }
      auto p = arity.check(detail::call_priority(c, child));
      queue.push(std::move(child), p);
    }
  }
  return run;
}

/// Aggregate computational model: subgraphs are grouped by key, groups are
/// the unit of prioritization, result insertion and domination. Children of
/// one dequeued group are regrouped into a fresh aggregator.
template <AggregateComputation C, SubgraphQueue<typename C::group_type> Queue>
RunResult<typename C::group_type> run_aggregate(const Graph& g, const C& c, std::size_t k,
                                                Queue& queue, const RunOptions& options = {},
                                                const RunHooks<typename C::group_type>& hooks = {}) {
  using S = typename C::subgraph_type;
  using G = typename C::group_type;
  using K = typename C::key_type;
  RunResult<G> run{ResultSet<G>(k), {}};
  auto& results = run.results;
  auto& stats = run.stats;
  detail::ArityGuard arity;
  auto make = [&](const K& key) { return c.make_group(key); };

  auto dominated_by_kth = [&](const G& grp) {
    return options.use_domination && results.full() &&
           detail::call_dominated(c, grp, results.kth().item);
  };

  {
    detail::Aggregator<K, G> seeds;
    for (auto& unit : c.units(g)) {
      ++stats.candidate_subgraphs;
      auto key = c.key(unit);
      c.add_member(seeds.at(key, make), std::move(unit));
    }
    for (auto& grp : seeds.groups()) {
      auto p = arity.check(detail::call_priority(c, grp));
      queue.push(std::move(grp), p);
    }
  }

  while (auto top = queue.pop()) {
    ++stats.dequeues;
    G& grp = top->item;
    if (hooks.on_dequeue) hooks.on_dequeue(grp, top->priority);
    if (c.relevant(grp) && results.admits(top->priority)) results.offer(grp, top->priority);
    if (dominated_by_kth(grp)) {
      ++stats.pruned_at_parent;
      if (hooks.on_parent_pruned) hooks.on_parent_pruned(grp);
      continue;
    }
    detail::Aggregator<K, G> children;
    for (const S& s : c.members(grp)) {
      for (const auto& delta : c.expansions(g, s)) {
        if (!detail::call_expandable(c, g, s, delta)) continue;
        S child = c.expand(g, s, delta);
        ++stats.candidate_subgraphs;
        auto key = c.key(child);
        c.add_member(children.at(key, make), std::move(child));
      }
    }
    for (auto& child : children.groups()) {
      const bool keep = !dominated_by_kth(child);
      if (hooks.on_child) hooks.on_child(grp, child, keep);
      if (!keep) {
        ++stats.pruned_at_child;
        continue;
      }
      auto p = arity.check(detail::call_priority(c, child));
      queue.push(std::move(child), p);
    }
  }
  return run;
}

}  // namespace subquest
