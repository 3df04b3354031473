#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "sfast/tournament.hpp"

namespace sfast {

/// Maximal strongly connected components listed in a topological order of the
/// condensation. Members are ascending; among simultaneously available
/// components the one with the smallest vertex comes first.
struct SccDecomposition {
  std::vector<std::vector<Vertex>> components;
  std::vector<int> component_of;
};

/// Works for Tournament and Digraph (anything with size() and
/// out_neighbors(v) returning a Bitset).
template <typename Graph>
SccDecomposition strongly_connected_components(const Graph& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<Vertex>> raw;
  int counter = 0;

  // Iterative Tarjan; the frame keeps the next neighbor to scan.
  struct Frame {
    Vertex v;
    std::size_t next;
  };
  std::vector<Frame> call;
  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call.push_back({root, g.out_neighbors(root).find_first()});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next != Bitset::npos) {
        const auto w = static_cast<Vertex>(f.next);
        f.next = g.out_neighbors(f.v).find_next(f.next);
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, g.out_neighbors(w).find_first()});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const Vertex v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<Vertex> members;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = static_cast<int>(raw.size());
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        raw.push_back(std::move(members));
      }
    }
  }

  // Kahn over the condensation, smallest member first among ready nodes.
  const int c = static_cast<int>(raw.size());
  std::vector<std::vector<int>> succ(c);
  std::vector<int> indeg(c, 0);
  {
    std::vector<char> seen(static_cast<std::size_t>(c) * c, 0);
    for (Vertex u = 0; u < n; ++u)
      g.out_neighbors(u).for_each([&](std::size_t w) {
        const int a = comp[u], b = comp[w];
        if (a != b && !seen[static_cast<std::size_t>(a) * c + b]) {
          seen[static_cast<std::size_t>(a) * c + b] = 1;
          succ[a].push_back(b);
          ++indeg[b];
        }
      });
  }
  using Key = std::pair<Vertex, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (int i = 0; i < c; ++i)
    if (indeg[i] == 0) ready.push({raw[i].front(), i});
  SccDecomposition out;
  out.component_of.assign(n, -1);
  while (!ready.empty()) {
    const int i = ready.top().second;
    ready.pop();
    const int id = static_cast<int>(out.components.size());
    for (Vertex v : raw[i]) out.component_of[v] = id;
    out.components.push_back(std::move(raw[i]));
    for (int j : succ[i])
      if (--indeg[j] == 0) ready.push({raw[j].front(), j});
  }
  return out;
}

/// True iff no directed cycle passes through a vertex of S.
template <typename Graph>
bool is_s_acyclic(const Graph& g, const Bitset& s) {
  const auto scc = strongly_connected_components(g);
  for (const auto& comp : scc.components)
    if (comp.size() >= 2)
      for (Vertex v : comp)
        if (s.test(v)) return false;
  return true;
}

/// Directed triangle a -> b -> c -> a, rotated so that a is the smallest.
struct Triangle {
  Vertex a = 0, b = 0, c = 0;

  std::array<Arc, 3> arcs() const { return {Arc{a, b}, Arc{b, c}, Arc{c, a}}; }
  std::array<Vertex, 3> vertices() const { return {a, b, c}; }
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

inline Triangle canonical_triangle(Vertex x, Vertex y, Vertex z) {
  if (y < x && y < z) return {y, z, x};
  if (z < x && z < y) return {z, x, y};
  return {x, y, z};
}

/// Lexicographically smallest S-triangle, optionally restricted to arcs that
/// are still `available` (one row per vertex, same layout as out-neighbors).
inline std::optional<Triangle> find_s_triangle(const Tournament& t, const Bitset& s,
                                               const std::vector<Bitset>* available = nullptr) {
  const auto n = static_cast<Vertex>(t.size());
  auto usable = [&](Vertex u, Vertex v) { return t.has_arc(u, v) && (!available || (*available)[u].test(v)); };
  for (Vertex a = 0; a < n; ++a) {
    Bitset into_a = t.in_neighbors(a);
    if (available) {
      Bitset mask(t.size());
      into_a.for_each([&](std::size_t c) {
        if ((*available)[c].test(a)) mask.set(c);
      });
      into_a = mask;
    }
    for (std::size_t b = t.out_neighbors(a).find_next(static_cast<std::size_t>(a)); b != Bitset::npos;
         b = t.out_neighbors(a).find_next(b)) {
      const auto vb = static_cast<Vertex>(b);
      if (!usable(a, vb)) continue;
      Bitset cand = t.out_neighbors(vb) & into_a;
      if (available) cand &= (*available)[vb];
      std::size_t c = cand.find_next(static_cast<std::size_t>(a));
      const bool endpoint_terminal = s.test(a) || s.test(b);
      while (c != Bitset::npos) {
        if (endpoint_terminal || s.test(c)) return Triangle{a, vb, static_cast<Vertex>(c)};
        c = cand.find_next(c);
      }
    }
  }
  return std::nullopt;
}

/// Some S-triangle (the lexicographically smallest), or nothing. On
/// tournaments emptiness is equivalent to S-acyclicity.
inline std::optional<Triangle> has_s_triangle(const Tournament& t, const Bitset& s) { return find_s_triangle(t, s); }

/// All w with (v,w),(w,u) in T and {u,v,w} meeting S, for e = (u,v).
inline std::vector<Vertex> s_triangles_through_arc(const Tournament& t, const Bitset& s, const Arc& e) {
  if (!t.has_arc(e)) throw InvalidArcError("arc " + to_string(e) + " is not in the tournament");
  Bitset cand = t.out_neighbors(e.head) & t.in_neighbors(e.tail);
  if (!s.test(e.tail) && !s.test(e.head)) cand &= s;
  return cand.to_vector();
}

/// Number of S-triangles through the arc (u,v); in_tail = in_neighbors(u).
inline std::size_t s_triangle_count(const Tournament& t, const Bitset& s, const Bitset& in_tail, Vertex u,
                                    Vertex v) {
  if (s.test(u) || s.test(v)) return Bitset::intersect_count(t.out_neighbors(v), in_tail);
  return Bitset::intersect_count(t.out_neighbors(v), in_tail, s);
}

/// S-topological ordering: ordered parts with every terminal in a singleton
/// part, each part strongly connected, and all arcs between parts pointing
/// forward.
struct OrderedPartition {
  std::vector<std::vector<Vertex>> parts;
  std::vector<int> s_singletons;
};

inline std::optional<OrderedPartition> s_topological_ordering(const Tournament& t, const Bitset& s) {
  if (has_s_triangle(t, s)) return std::nullopt;
  auto scc = strongly_connected_components(t);
  OrderedPartition p;
  p.parts = std::move(scc.components);
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    const auto& part = p.parts[i];
    if (part.size() == 1 && s.test(part.front())) p.s_singletons.push_back(static_cast<int>(i));
    else
      for (Vertex v : part)
        if (s.test(v)) throw InternalInvariantError("terminal inside a non-trivial component of an S-acyclic tournament");
  }
  return p;
}

/// Arcs (u,v) with u after v in sigma such that u or v is a terminal or a
/// terminal lies strictly between them.
inline ArcSet s_backward_arcs(const Tournament& t, const Bitset& s, std::span<const Vertex> sigma) {
  const std::size_t n = t.size();
  if (sigma.size() != n) throw PreconditionError("ordering is not a permutation of the vertices");
  {
    std::vector<char> seen(n, 0);
    for (Vertex v : sigma) {
      if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) throw PreconditionError("ordering is not a permutation of the vertices");
      seen[v] = 1;
    }
  }
  // terminals_before[i] = terminals among sigma[0..i)
  std::vector<int> terminals_before(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) terminals_before[i + 1] = terminals_before[i] + (s.test(sigma[i]) ? 1 : 0);
  std::vector<Arc> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vertex early = sigma[i], late = sigma[j];
      if (!t.has_arc(late, early)) continue;
      if (s.test(early) || s.test(late) || terminals_before[j] - terminals_before[i + 1] > 0)
        out.push_back({late, early});
    }
  return ArcSet(std::move(out));
}

enum class SolutionMode { deletion, reversal };

/// |F| <= k and T - F (deletion) or T (*) F (reversal) is S-acyclic.
inline bool verify_solution(const Instance& inst, const ArcSet& f, SolutionMode mode) {
  for (const Arc& a : f)
    if (!inst.tournament.has_arc(a)) throw InvalidArcError("arc " + to_string(a) + " is not in the tournament");
  if (static_cast<long long>(f.size()) > static_cast<long long>(inst.k)) return false;
  if (mode == SolutionMode::deletion) return is_s_acyclic(delete_arcs(inst.tournament, f), inst.terminals);
  return !has_s_triangle(reverse_arcs(inst.tournament, f), inst.terminals);
}

/// Same check without the budget.
inline bool is_s_feedback_arc_set(const Tournament& t, const Bitset& s, const ArcSet& f, SolutionMode mode) {
  Instance inst(t, s, static_cast<int>(f.size()));
  return verify_solution(inst, f, mode);
}

}  // namespace sfast
