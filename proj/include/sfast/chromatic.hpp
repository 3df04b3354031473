#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sfast/graph_algorithms.hpp"
#include "sfast/random.hpp"

namespace sfast {

struct Coloring {
  int q = 1;
  std::vector<int> color_of;
  std::uint64_t seed = 0, trial = 0;
};

/// ceil(sqrt(8k)), computed exactly.
inline int color_count(int k) {
  if (k < 1) throw PreconditionError("colorings need k >= 1");
  const long long target = 8LL * k;
  int q = 1;
  while (static_cast<long long>(q) * q < target) ++q;
  return q;
}

/// Independent uniform colors from a stream keyed by (seed, trial, vertex).
inline Coloring draw_coloring(std::size_t n, int k, std::uint64_t seed, std::uint64_t trial) {
  Coloring c;
  c.q = color_count(k);
  c.seed = seed;
  c.trial = trial;
  c.color_of.resize(n);
  const std::uint64_t stream = mix_keys(seed, trial);
  for (std::size_t v = 0; v < n; ++v)
    c.color_of[v] = static_cast<int>(scale_to(mix_keys(stream, v), static_cast<std::uint64_t>(c.q)));
  return c;
}

/// No arc of f joins two vertices of the same color.
inline bool is_colorful(const ArcSet& f, const Coloring& c) {
  for (const Arc& a : f)
    if (c.color_of[a.tail] == c.color_of[a.head]) return false;
  return true;
}

inline std::vector<std::vector<Vertex>> color_classes(const Coloring& c) {
  std::vector<std::vector<Vertex>> classes(static_cast<std::size_t>(c.q));
  for (std::size_t v = 0; v < c.color_of.size(); ++v) classes[c.color_of[v]].push_back(static_cast<Vertex>(v));
  return classes;
}

inline bool classes_feasible(const Tournament& t, const Bitset& s, const Coloring& c) {
  for (const auto& cls : color_classes(c)) {
    Bitset sub(cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i)
      if (s.test(cls[i])) sub.set(i);
    if (has_s_triangle(t.induced(cls), sub)) return false;
  }
  return true;
}

/// One node per maximal SCC of each color class.
struct ContractedNode {
  std::vector<Vertex> members;  // ascending
  int color = 0;
  bool terminal = false;
};

struct ContractedTournament {
  std::vector<ContractedNode> nodes;
  /// weight[a][b]: number of arcs from members of a to members of b.
  std::vector<std::vector<int>> weight;
  /// per_color_order[i]: node ids of color i in topological order.
  std::vector<std::vector<int>> per_color_order;

  std::size_t size() const { return nodes.size(); }
};

inline ContractedTournament contract(const Tournament& t, const Bitset& s, const Coloring& c) {
  if (c.color_of.size() != t.size()) throw PreconditionError("coloring does not match the tournament");
  ContractedTournament ct;
  std::vector<int> node_of(t.size(), -1);
  ct.per_color_order.resize(static_cast<std::size_t>(c.q));
  const auto classes = color_classes(c);
  for (int color = 0; color < c.q; ++color) {
    const auto& cls = classes[color];
    const Tournament sub = t.induced(cls);
    for (const auto& comp : strongly_connected_components(sub).components) {
      ContractedNode node;
      node.color = color;
      for (Vertex local : comp) node.members.push_back(cls[local]);
      for (Vertex v : node.members)
        if (s.test(v)) {
          if (node.members.size() > 1) throw PreconditionError("coloring is infeasible: terminal in a cyclic color class");
          node.terminal = true;
        }
      const int id = static_cast<int>(ct.nodes.size());
      for (Vertex v : node.members) node_of[v] = id;
      ct.per_color_order[color].push_back(id);
      ct.nodes.push_back(std::move(node));
    }
  }
  ct.weight.assign(ct.size(), std::vector<int>(ct.size(), 0));
  for (Vertex u = 0; u < static_cast<Vertex>(t.size()); ++u)
    t.out_neighbors(u).for_each([&](std::size_t v) {
      if (node_of[u] != node_of[v]) ++ct.weight[node_of[u]][node_of[v]];
    });
  return ct;
}

struct DpResult {
  long long value = 0;
  std::vector<int> node_order;
  std::size_t states = 0;
};

struct DpOptions {
  /// Largest per-color suffix a type-(a) step may take; 0 means unbounded.
  int suffix_cap = 0;
};

/// Minimum weighted S-backward arc count over node orders that keep every
/// color's nodes in their topological order, by dynamic programming over
/// prefix vectors (a_1..a_q). States are indexed in mixed radix and
/// evaluated in index order, which visits every dominated vector first.
inline DpResult dp_min_colorful_sfas(const ContractedTournament& ct, const DpOptions& opt = {}) {
  const int q = static_cast<int>(ct.per_color_order.size());
  std::vector<int> len(q), stride(q);
  std::size_t states = 1;
  for (int i = 0; i < q; ++i) {
    len[i] = static_cast<int>(ct.per_color_order[i].size());
    stride[i] = static_cast<int>(states);
    states *= static_cast<std::size_t>(len[i] + 1);
    if (states > (std::size_t{1} << 31)) throw SizeError("prefix-vector state space too large");
  }
  // last_terminal[i][a]: number of leading nodes of color i up to and
  // including the last terminal among the first a (0 if none).
  std::vector<std::vector<int>> last_terminal(q);
  for (int i = 0; i < q; ++i) {
    last_terminal[i].assign(len[i] + 1, 0);
    for (int a = 1; a <= len[i]; ++a)
      last_terminal[i][a] = ct.nodes[ct.per_color_order[i][a - 1]].terminal ? a : last_terminal[i][a - 1];
  }
  // into[x][j][b]: weight of arcs from node x into the first b nodes of color j.
  std::vector<std::vector<std::vector<long long>>> into(ct.size(), std::vector<std::vector<long long>>(q));
  for (std::size_t x = 0; x < ct.size(); ++x)
    for (int j = 0; j < q; ++j) {
      auto& row = into[x][j];
      row.assign(len[j] + 1, 0);
      for (int b = 1; b <= len[j]; ++b) row[b] = row[b - 1] + ct.weight[x][ct.per_color_order[j][b - 1]];
    }

  // pair[i][j][x * (len[j] + 1) + y]: weight of arcs from the first x nodes
  // of color i into the first y nodes of color j. The cost of placing the
  // suffix V(p) \ V(r) last is then sum_ij pair[a_i][r_j] - pair[r_i][r_j],
  // a separable term in r plus a term of r alone.
  std::vector<std::vector<std::vector<long long>>> pair(q, std::vector<std::vector<long long>>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      auto& m = pair[i][j];
      const int w = len[j] + 1;
      m.assign(static_cast<std::size_t>((len[i] + 1) * w), 0);
      for (int x = 1; x <= len[i]; ++x) {
        const int node = ct.per_color_order[i][x - 1];
        for (int y = 0; y <= len[j]; ++y) m[x * w + y] = m[(x - 1) * w + y] + into[node][j][y];
      }
    }
  const auto inner = [&](const std::vector<int>& v) {
    long long total = 0;
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) total += pair[i][j][v[i] * (len[j] + 1) + v[j]];
    return total;
  };

  constexpr long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> sfas(states, inf);
  // sfas minus the weight of arcs inside the prefix; inf where sfas is.
  std::vector<long long> reduced(states, inf);
  // choice: -1 base, -2-i terminal of color i on top, otherwise predecessor index.
  std::vector<long long> choice(states, -1);
  std::vector<int> a(q, 0), b(q, 0), lo(q);
  std::vector<std::vector<long long>> h(q);
  const auto decode = [&](std::size_t idx, std::vector<int>& v) {
    for (int i = 0; i < q; ++i) {
      v[i] = static_cast<int>(idx % static_cast<std::size_t>(len[i] + 1));
      idx /= static_cast<std::size_t>(len[i] + 1);
    }
  };
  for (std::size_t p = 0; p < states; ++p) {
    decode(p, a);
    bool has_terminal = false;
    for (int i = 0; i < q; ++i) has_terminal = has_terminal || last_terminal[i][a[i]] > 0;
    if (!has_terminal) {
      sfas[p] = 0;
      reduced[p] = -inner(a);
      continue;
    }
    long long best = inf, arg = -1;
    // (b) a terminal on top of its color's prefix is the last vertex.
    for (int i = 0; i < q; ++i) {
      if (a[i] == 0 || last_terminal[i][a[i]] != a[i]) continue;
      const int s = ct.per_color_order[i][a[i] - 1];
      const std::size_t prev = p - static_cast<std::size_t>(stride[i]);
      long long cost = sfas[prev];
      for (int j = 0; j < q; ++j) cost += into[s][j][j == i ? a[j] - 1 : a[j]];
      if (cost < best) {
        best = cost;
        arg = -2 - i;
      }
    }
    // (a) a terminal-free suffix D = V(p) \ V(r) is placed last. Enumerate
    // r in the box prod [last_terminal, a] minus p itself; h[j][y] is the
    // weight of arcs from V(p) into the first y nodes of color j.
    std::size_t ri = 0;
    long long hsum = 0;
    for (int j = 0; j < q; ++j) {
      lo[j] = last_terminal[j][a[j]];
      if (opt.suffix_cap > 0) lo[j] = std::max(lo[j], a[j] - opt.suffix_cap);
      b[j] = lo[j];
      h[j].assign(static_cast<std::size_t>(len[j] + 1), 0);
      for (int y = lo[j]; y <= a[j]; ++y)
        for (int i = 0; i < q; ++i) h[j][y] += pair[i][j][a[i] * (len[j] + 1) + y];
      ri += static_cast<std::size_t>(lo[j]) * static_cast<std::size_t>(stride[j]);
      hsum += h[j][lo[j]];
    }
    for (;;) {
      if (ri != p && reduced[ri] < inf) {
        const long long cost = reduced[ri] + hsum;
        if (cost < best) {
          best = cost;
          arg = static_cast<long long>(ri);
        }
      }
      int i = 0;
      while (i < q && b[i] == a[i]) {
        ri -= static_cast<std::size_t>(b[i] - lo[i]) * static_cast<std::size_t>(stride[i]);
        hsum += h[i][lo[i]] - h[i][b[i]];
        b[i] = lo[i];
        ++i;
      }
      if (i == q) break;
      ri += static_cast<std::size_t>(stride[i]);
      hsum += h[i][b[i] + 1] - h[i][b[i]];
      ++b[i];
    }
    if (arg == -1) throw InternalInvariantError("prefix vector with a terminal has no transition");
    sfas[p] = best;
    reduced[p] = best - inner(a);
    choice[p] = arg;
  }

  DpResult r;
  r.states = states;
  r.value = sfas[states - 1];
  // Backtrack from the full vector; blocks are collected last-first.
  std::vector<std::vector<int>> blocks;
  std::size_t p = states - 1;
  for (;;) {
    decode(p, a);
    const long long c = choice[p];
    if (c == -1) {
      std::vector<int> block;
      for (int i = 0; i < q; ++i)
        for (int t = 0; t < a[i]; ++t) block.push_back(ct.per_color_order[i][t]);
      blocks.push_back(std::move(block));
      break;
    }
    if (c <= -2) {
      const int i = static_cast<int>(-2 - c);
      blocks.push_back({ct.per_color_order[i][a[i] - 1]});
      p -= static_cast<std::size_t>(stride[i]);
      continue;
    }
    decode(static_cast<std::size_t>(c), b);
    std::vector<int> block;
    for (int i = 0; i < q; ++i)
      for (int t = b[i]; t < a[i]; ++t) block.push_back(ct.per_color_order[i][t]);
    blocks.push_back(std::move(block));
    p = static_cast<std::size_t>(c);
  }
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) r.node_order.insert(r.node_order.end(), it->begin(), it->end());
  return r;
}

/// Weighted S-backward arc count of a node order of the contracted graph.
inline long long contracted_backward_weight(const ContractedTournament& ct, const std::vector<int>& order) {
  long long total = 0;
  std::vector<int> terminals_before(order.size() + 1, 0);
  for (std::size_t i = 0; i < order.size(); ++i) terminals_before[i + 1] = terminals_before[i] + (ct.nodes[order[i]].terminal ? 1 : 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const int early = order[i], late = order[j];
      if (ct.nodes[early].terminal || ct.nodes[late].terminal || terminals_before[j] - terminals_before[i + 1] > 0)
        total += ct.weight[late][early];
    }
  return total;
}

/// Vertex order from a node order (members ascending inside a node), and
/// the S-backward arcs of T under it. Checks that the size matches the DP
/// value and that reversing the set leaves T S-acyclic.
inline ArcSet expand_solution(const Tournament& t, const Bitset& s, const ContractedTournament& ct, const DpResult& dp) {
  std::vector<Vertex> sigma;
  sigma.reserve(t.size());
  for (int node : dp.node_order)
    for (Vertex v : ct.nodes[node].members) sigma.push_back(v);
  ArcSet f = s_backward_arcs(t, s, sigma);
  if (static_cast<long long>(f.size()) != dp.value)
    throw InternalInvariantError("expanded solution has " + std::to_string(f.size()) + " arcs, DP value is " + std::to_string(dp.value));
  if (has_s_triangle(reverse_arcs(t, f), s)) throw InternalInvariantError("expanded solution does not make the tournament S-acyclic");
  return f;
}

}  // namespace sfast
