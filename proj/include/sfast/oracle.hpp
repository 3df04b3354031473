#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sfast/graph_algorithms.hpp"

namespace sfast {

/// Shortest directed cycle through a terminal, as its arc list; empty when
/// the digraph is S-acyclic. Ties go to the smallest terminal.
inline std::vector<Arc> shortest_s_cycle(const Digraph& d, const Bitset& s) {
  const int n = static_cast<int>(d.size());
  std::vector<Arc> best;
  std::vector<int> parent(n), dist(n);
  for (std::size_t si = s.find_first(); si != Bitset::npos; si = s.find_next(si)) {
    const auto src = static_cast<Vertex>(si);
    std::fill(dist.begin(), dist.end(), -1);
    Bitset unseen(d.size());
    unseen.set_all();
    unseen.reset(si);
    dist[src] = 0;
    std::vector<Vertex> frontier{src};
    Vertex closing = -1;
    for (std::size_t head = 0; head < frontier.size() && closing < 0; ++head) {
      const Vertex u = frontier[head];
      if (!best.empty() && dist[u] + 1 >= static_cast<int>(best.size())) break;
      if (d.has_arc(u, src) && u != src) {
        closing = u;
        break;
      }
      (d.out_neighbors(u) & unseen).for_each([&](std::size_t w) {
        unseen.reset(w);
        dist[w] = dist[u] + 1;
        parent[w] = u;
        frontier.push_back(static_cast<Vertex>(w));
      });
    }
    if (closing < 0) continue;
    std::vector<Arc> cyc{{closing, src}};
    for (Vertex v = closing; v != src; v = parent[v]) cyc.push_back({parent[v], v});
    std::reverse(cyc.begin(), cyc.end());
    if (best.empty() || cyc.size() < best.size()) best = std::move(cyc);
    if (best.size() == 2) break;
  }
  return best;
}

namespace detail {

class DeletionSearch {
 public:
  DeletionSearch(const Tournament& t, const Bitset& s, std::uint64_t budget)
      : d_(t.as_digraph()), s_(s), frozen_(t.size(), Bitset(t.size())), budget_(budget) {}

  bool run(int depth) { return dfs(depth); }
  const std::vector<Arc>& chosen() const { return chosen_; }

 private:
  bool dfs(int depth) {
    if (++nodes_ > budget_) throw SizeError("deletion oracle exceeded its node budget of " + std::to_string(budget_));
    const auto cycle = shortest_s_cycle(d_, s_);
    if (cycle.empty()) return true;
    if (depth == 0) return false;
    // Every solution deletes some arc of this cycle; once the branch on an
    // arc fails, later branches keep it.
    std::vector<Arc> frozen_here;
    bool found = false;
    for (const Arc& a : cycle) {
      if (frozen_[a.tail].test(a.head)) continue;
      d_.remove_arc(a.tail, a.head);
      chosen_.push_back(a);
      found = dfs(depth - 1);
      d_.add_arc(a.tail, a.head);
      if (found) break;
      chosen_.pop_back();
      frozen_[a.tail].set(a.head);
      frozen_here.push_back(a);
    }
    for (const Arc& a : frozen_here) frozen_[a.tail].reset(a.head);
    return found;
  }

  Digraph d_;
  const Bitset& s_;
  std::vector<Bitset> frozen_;
  std::vector<Arc> chosen_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline constexpr std::uint64_t kDefaultOracleBudget = 50'000'000;

/// A minimum deletion S-fas of size at most k_max, or nothing. Exact; sizes
/// are tried in increasing order so the first hit is minimum.
inline std::optional<ArcSet> oracle_min_deletion_witness(const Tournament& t, const Bitset& s, int k_max,
                                                         std::uint64_t node_budget = kDefaultOracleBudget) {
  if (k_max < 0) return std::nullopt;
  for (int k = 0; k <= k_max; ++k) {
    detail::DeletionSearch search(t, s, node_budget);
    if (search.run(k)) return ArcSet(search.chosen());
  }
  return std::nullopt;
}

inline std::optional<int> oracle_min_deletion(const Tournament& t, const Bitset& s, int k_max,
                                              std::uint64_t node_budget = kDefaultOracleBudget) {
  const auto w = oracle_min_deletion_witness(t, s, k_max, node_budget);
  if (!w) return std::nullopt;
  return static_cast<int>(w->size());
}

/// Exact optimum without a cap.
inline int oracle_optimum(const Tournament& t, const Bitset& s, std::uint64_t node_budget = kDefaultOracleBudget) {
  const int m = static_cast<int>(t.size() * (t.size() - (t.size() > 0 ? 1 : 0)) / 2);
  return *oracle_min_deletion(t, s, m, node_budget);
}

/// Yes/no answer of an instance by the deletion oracle.
inline bool oracle_answer(const Instance& inst, std::uint64_t node_budget = kDefaultOracleBudget) {
  return oracle_min_deletion(inst.tournament, inst.terminals, inst.k, node_budget).has_value();
}

inline std::size_t s_backward_count(const Tournament& t, const Bitset& s, std::span<const Vertex> sigma) {
  const std::size_t n = sigma.size();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool terminal_between = false;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vertex early = sigma[i], late = sigma[j];
      if (t.has_arc(late, early) && (terminal_between || s.test(early) || s.test(late))) ++count;
      if (s.test(late)) terminal_between = true;
    }
  }
  return count;
}

inline constexpr int kDefaultFactorialBound = 9;

/// Minimum over all vertex permutations of the S-backward arc count.
inline int oracle_min_reversal_orderings(const Tournament& t, const Bitset& s, int max_n = kDefaultFactorialBound) {
  const int n = static_cast<int>(t.size());
  if (n > max_n)
    throw SizeError("ordering oracle limited to n <= " + std::to_string(max_n) + ", got " + std::to_string(n));
  std::vector<Vertex> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::size_t best = static_cast<std::size_t>(-1);
  do {
    best = std::min(best, s_backward_count(t, s, sigma));
    if (best == 0) break;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return static_cast<int>(best);
}

}  // namespace sfast
