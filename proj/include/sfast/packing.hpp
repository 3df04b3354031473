#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "sfast/graph_algorithms.hpp"

namespace sfast {

/// Maximal family of pairwise arc-disjoint S-triangles.
struct ConflictPacking {
  std::vector<Triangle> triangles;
  ArcSet packed_arcs;
  Bitset covered_vertices;

  std::size_t size() const { return triangles.size(); }
};

/// Greedy: take the lexicographically smallest S-triangle on the remaining
/// arcs, drop its arcs, repeat.
inline ConflictPacking conflict_packing(const Tournament& t, const Bitset& s) {
  std::vector<Bitset> available;
  available.reserve(t.size());
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) available.push_back(t.out_neighbors(v));
  ConflictPacking c;
  c.covered_vertices = Bitset(t.size());
  std::vector<Arc> packed;
  while (auto tri = find_s_triangle(t, s, &available)) {
    c.triangles.push_back(*tri);
    for (const Arc& a : tri->arcs()) {
      available[a.tail].reset(a.head);
      packed.push_back(a);
    }
    for (Vertex v : tri->vertices()) c.covered_vertices.set(v);
  }
  c.packed_arcs = ArcSet(std::move(packed));
  return c;
}

/// Ordering used to bound backward arcs against a packing: the free terminals
/// S1 = S \ V(C) in their (unique) topological order, every other vertex in
/// the slot fixed by its S1 in-neighbors, ascending index inside a slot.
inline std::vector<Vertex> packing_ordering(const Tournament& t, const Bitset& s, const ConflictPacking& c) {
  const auto n = static_cast<Vertex>(t.size());
  const Bitset s1 = s - c.covered_vertices;
  std::vector<Vertex> free_terminals = s1.to_vector();
  const auto in_s1 = [&](Vertex v) { return Bitset::intersect_count(t.in_neighbors(v), s1); };
  std::sort(free_terminals.begin(), free_terminals.end(),
            [&](Vertex a, Vertex b) { return in_s1(a) < in_s1(b); });
  for (std::size_t i = 0; i < free_terminals.size(); ++i)
    if (in_s1(free_terminals[i]) != i) throw InternalInvariantError("free terminals do not induce a transitive tournament");

  std::vector<std::vector<Vertex>> bags(free_terminals.size() + 1);
  for (Vertex v = 0; v < n; ++v) {
    if (s1.test(v)) continue;
    const std::size_t slot = in_s1(v);
    // The in-neighbors among S1 have to be exactly the first `slot` of them.
    for (std::size_t i = 0; i < free_terminals.size(); ++i)
      if (t.has_arc(free_terminals[i], v) != (i < slot))
        throw InternalInvariantError("vertex " + std::to_string(v) + " has no unique slot among the free terminals");
    bags[slot].push_back(v);
  }
  std::vector<Vertex> sigma;
  sigma.reserve(t.size());
  for (std::size_t i = 0; i < bags.size(); ++i) {
    sigma.insert(sigma.end(), bags[i].begin(), bags[i].end());
    if (i < free_terminals.size()) sigma.push_back(free_terminals[i]);
  }
  return sigma;
}

/// H = (X, Y, E): X indexes packed arcs, Y the free terminals, and x_(u,v) is
/// adjacent to y when (y,u) and (v,y) are arcs.
struct BipartiteConflictGraph {
  std::vector<Arc> x;
  std::vector<Vertex> y;
  std::vector<std::vector<int>> adjacency;  // per X node, ascending Y indices
};

inline BipartiteConflictGraph build_conflict_bipartite(const Tournament& t, const Bitset& s, const ConflictPacking& c) {
  BipartiteConflictGraph h;
  h.x = c.packed_arcs.as_vector();
  h.y = (s - c.covered_vertices).to_vector();
  h.adjacency.resize(h.x.size());
  std::vector<char> touched(h.y.size(), 0);
  for (std::size_t i = 0; i < h.x.size(); ++i) {
    const auto [u, v] = h.x[i];
    for (std::size_t j = 0; j < h.y.size(); ++j)
      if (t.has_arc(h.y[j], u) && t.has_arc(v, h.y[j])) {
        h.adjacency[i].push_back(static_cast<int>(j));
        touched[j] = 1;
      }
  }
  for (std::size_t j = 0; j < h.y.size(); ++j)
    if (!touched[j])
      throw InternalInvariantError("free terminal " + std::to_string(h.y[j]) + " is isolated in the conflict graph");
  return h;
}

struct MatchingCover {
  std::vector<int> match_of_x;  // Y index or -1
  std::vector<int> match_of_y;  // X index or -1
  std::size_t matching_size = 0;
  std::vector<int> cover_x;  // M_X, ascending X indices
  std::vector<int> cover_y;  // M_Y, ascending Y indices
};

/// Maximum matching by augmenting paths, then the Konig cover
/// (X \ Z) + (Y & Z) where Z is everything reachable from unmatched X nodes
/// along alternating paths.
inline MatchingCover max_matching_min_vertex_cover(const BipartiteConflictGraph& h) {
  const int nx = static_cast<int>(h.x.size()), ny = static_cast<int>(h.y.size());
  MatchingCover r;
  r.match_of_x.assign(nx, -1);
  r.match_of_y.assign(ny, -1);

  std::vector<int> seen(ny, -1);
  // Iterative DFS for one augmenting path from x0; stamp marks visited Y.
  auto augment = [&](int x0, int stamp) {
    std::vector<std::pair<int, std::size_t>> stack{{x0, 0}};
    std::vector<int> via;  // Y node taken out of each stack frame
    while (!stack.empty()) {
      auto& [x, next] = stack.back();
      if (next == h.adjacency[x].size()) {
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      const int y = h.adjacency[x][next++];
      if (seen[y] == stamp) continue;
      seen[y] = stamp;
      via.push_back(y);
      if (r.match_of_y[y] == -1) {
        for (std::size_t i = 0; i < via.size(); ++i) {
          r.match_of_x[stack[i].first] = via[i];
          r.match_of_y[via[i]] = stack[i].first;
        }
        return true;
      }
      stack.push_back({r.match_of_y[y], 0});
    }
    return false;
  };
  for (int x = 0; x < nx; ++x)
    if (augment(x, x)) ++r.matching_size;

  std::vector<char> reach_x(nx, 0), reach_y(ny, 0);
  std::vector<int> queue;
  for (int x = 0; x < nx; ++x)
    if (r.match_of_x[x] == -1) {
      reach_x[x] = 1;
      queue.push_back(x);
    }
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int y : h.adjacency[queue[head]]) {
      if (reach_y[y]) continue;
      reach_y[y] = 1;
      const int x2 = r.match_of_y[y];
      if (x2 != -1 && !reach_x[x2]) {
        reach_x[x2] = 1;
        queue.push_back(x2);
      }
    }
  for (int x = 0; x < nx; ++x)
    if (!reach_x[x]) r.cover_x.push_back(x);
  for (int y = 0; y < ny; ++y)
    if (reach_y[y]) r.cover_y.push_back(y);
  if (r.cover_x.size() + r.cover_y.size() != r.matching_size)
    throw InternalInvariantError("vertex cover size differs from matching size");
  return r;
}

/// Safe partition data computed by Rule 5; exposed for tests.
struct SafePartition {
  std::vector<Vertex> sigma;
  std::vector<std::vector<Vertex>> parts;
  ArcSet external_backward;  // B_E
};

/// Parts are the singletons of Y \ M_Y and the maximal runs between them.
inline SafePartition safe_partition(const Tournament& t, const std::vector<Vertex>& sigma,
                                    const BipartiteConflictGraph& h, const MatchingCover& m) {
  Bitset separators(t.size());
  for (Vertex y : h.y) separators.set(y);
  for (int j : m.cover_y) separators.reset(h.y[j]);

  SafePartition p;
  p.sigma = sigma;
  std::vector<int> part_of(t.size(), -1), position(t.size(), -1);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const Vertex v = sigma[i];
    position[v] = static_cast<int>(i);
    if (separators.test(v)) {
      p.parts.push_back({v});
    } else {
      if (p.parts.empty() || separators.test(p.parts.back().front())) p.parts.emplace_back();
      p.parts.back().push_back(v);
    }
    part_of[v] = static_cast<int>(p.parts.size()) - 1;
  }
  std::vector<Arc> back;
  for (Vertex u = 0; u < static_cast<Vertex>(t.size()); ++u)
    t.out_neighbors(u).for_each([&](std::size_t w) {
      if (position[u] > position[w] && part_of[u] != part_of[w]) back.push_back({u, static_cast<Vertex>(w)});
    });
  p.external_backward = ArcSet(std::move(back));
  return p;
}

}  // namespace sfast
