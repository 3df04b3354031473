#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sfast/bitset.hpp"
#include "sfast/errors.hpp"

namespace sfast {

/// Position of a vertex inside one graph value.
using Vertex = int;
/// Stable external identifier of a vertex; survives deletions.
using Label = int;

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  Arc reversed() const { return {head, tail}; }
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

inline std::string to_string(const Arc& a) {
  return "(" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")";
}

/// Ordered pairs kept sorted and unique.
class ArcSet {
 public:
  using const_iterator = std::vector<Arc>::const_iterator;

  ArcSet() = default;
  ArcSet(std::initializer_list<Arc> arcs) : arcs_(arcs) { normalize(); }
  explicit ArcSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) { normalize(); }

  bool insert(const Arc& a) {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
    if (it != arcs_.end() && *it == a) return false;
    arcs_.insert(it, a);
    return true;
  }
  bool erase(const Arc& a) {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
    if (it == arcs_.end() || *it != a) return false;
    arcs_.erase(it);
    return true;
  }
  bool contains(const Arc& a) const { return std::binary_search(arcs_.begin(), arcs_.end(), a); }

  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  const_iterator begin() const { return arcs_.begin(); }
  const_iterator end() const { return arcs_.end(); }
  const std::vector<Arc>& as_vector() const { return arcs_; }

  friend bool operator==(const ArcSet&, const ArcSet&) = default;

 private:
  void normalize() {
    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  }
  std::vector<Arc> arcs_;
};

/// General digraph without self-loops; arises as T - F under deletion
/// semantics.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n) : out_(n, Bitset(n)) {}

  std::size_t size() const { return out_.size(); }
  bool has_arc(Vertex u, Vertex v) const { return out_[u].test(v); }
  const Bitset& out_neighbors(Vertex v) const { return out_[v]; }

  void add_arc(Vertex u, Vertex v) {
    if (u == v) throw InvalidArcError("self-loop " + to_string(Arc{u, v}));
    out_[u].set(v);
  }
  void remove_arc(Vertex u, Vertex v) { out_[u].reset(v); }

  ArcSet arcs() const {
    std::vector<Arc> a;
    for (std::size_t u = 0; u < out_.size(); ++u)
      out_[u].for_each([&](std::size_t v) { a.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)}); });
    return ArcSet(std::move(a));
  }

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::vector<Bitset> out_;
};

/// Orientation of the complete graph on n vertices. Stored as out-neighbor
/// rows; orient() keeps both directions of a pair consistent so there is
/// always exactly one arc per unordered pair. Labels are strictly increasing
/// in vertex order.
class Tournament {
 public:
  Tournament() = default;

  /// Transitive tournament i -> j for all i < j, labels 0..n-1.
  explicit Tournament(std::size_t n) : out_(n, Bitset(n)), labels_(n) {
    for (std::size_t i = 0; i < n; ++i) {
      labels_[i] = static_cast<Label>(i);
      for (std::size_t j = i + 1; j < n; ++j) out_[i].set(j);
    }
  }

  /// Builds from an explicit arc list; every unordered pair must appear
  /// exactly once.
  static Tournament from_arcs(std::size_t n, std::span<const Arc> arcs) {
    Tournament t(n);
    std::vector<Bitset> seen(n, Bitset(n));
    for (const Arc& a : arcs) {
      if (a.tail < 0 || a.head < 0 || static_cast<std::size_t>(a.tail) >= n ||
          static_cast<std::size_t>(a.head) >= n)
        throw InvalidArcError("vertex out of range in " + to_string(a));
      if (a.tail == a.head) throw InvalidArcError("self-loop " + to_string(a));
      const auto lo = std::min(a.tail, a.head), hi = std::max(a.tail, a.head);
      if (seen[lo].test(hi)) throw InvalidArcError("duplicate pair " + to_string(a));
      seen[lo].set(hi);
      t.orient(a.tail, a.head);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!seen[i].test(j))
          throw InvalidArcError("missing pair {" + std::to_string(i) + "," + std::to_string(j) + "}");
    return t;
  }

  std::size_t size() const { return out_.size(); }

  bool has_arc(Vertex u, Vertex v) const { return u != v && out_[u].test(v); }
  bool has_arc(const Arc& a) const { return has_arc(a.tail, a.head); }

  const Bitset& out_neighbors(Vertex v) const { return out_[v]; }
  Bitset in_neighbors(Vertex v) const {
    Bitset r = ~out_[v];
    r.reset(static_cast<std::size_t>(v));
    return r;
  }
  std::size_t out_degree(Vertex v) const { return out_[v].count(); }
  std::size_t in_degree(Vertex v) const { return size() - 1 - out_degree(v); }

  /// Makes u -> v the arc between u and v.
  void orient(Vertex u, Vertex v) {
    if (u == v) throw InvalidArcError("self-loop " + to_string(Arc{u, v}));
    out_[u].set(v);
    out_[v].reset(u);
  }

  Label label(Vertex v) const { return labels_[v]; }
  const std::vector<Label>& labels() const { return labels_; }
  std::optional<Vertex> index_of(Label l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l) return std::nullopt;
    return static_cast<Vertex>(it - labels_.begin());
  }

  /// Relabels vertices; labels must be strictly increasing.
  void set_labels(std::vector<Label> labels) {
    if (labels.size() != size() || !std::is_sorted(labels.begin(), labels.end()) ||
        std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      throw PreconditionError("labels must be strictly increasing and match the vertex count");
    labels_ = std::move(labels);
  }

  /// Compacted subtournament on `keep` (ascending), carrying labels.
  Tournament induced(std::span<const Vertex> keep) const {
    Tournament t;
    const std::size_t m = keep.size();
    t.out_.assign(m, Bitset(m));
    t.labels_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      t.labels_[i] = labels_[keep[i]];
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && out_[keep[i]].test(keep[j])) t.out_[i].set(j);
    }
    return t;
  }

  Tournament without(Vertex v) const {
    std::vector<Vertex> keep;
    keep.reserve(size());
    for (Vertex u = 0; u < static_cast<Vertex>(size()); ++u)
      if (u != v) keep.push_back(u);
    return induced(keep);
  }

  ArcSet arcs() const {
    std::vector<Arc> a;
    a.reserve(size() * (size() - (size() > 0 ? 1 : 0)) / 2);
    for (std::size_t u = 0; u < size(); ++u)
      out_[u].for_each([&](std::size_t v) { a.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)}); });
    return ArcSet(std::move(a));
  }

  Digraph as_digraph() const {
    Digraph d(size());
    for (std::size_t u = 0; u < size(); ++u)
      out_[u].for_each([&](std::size_t v) { d.add_arc(static_cast<Vertex>(u), static_cast<Vertex>(v)); });
    return d;
  }

  friend bool operator==(const Tournament&, const Tournament&) = default;

 private:
  std::vector<Bitset> out_;
  std::vector<Label> labels_;
};

/// A tournament, a terminal set and a budget. k may be any integer.
struct Instance {
  Tournament tournament;
  Bitset terminals;
  int k = 0;

  Instance() = default;
  Instance(Tournament t, Bitset s, int budget) : tournament(std::move(t)), terminals(std::move(s)), k(budget) {
    if (terminals.size() != tournament.size())
      throw PreconditionError("terminal set size does not match the tournament");
  }
  Instance(Tournament t, std::span<const Vertex> s, int budget) : tournament(std::move(t)), k(budget) {
    terminals = Bitset(tournament.size());
    for (Vertex v : s) {
      if (v < 0 || static_cast<std::size_t>(v) >= tournament.size())
        throw PreconditionError("terminal " + std::to_string(v) + " out of range");
      terminals.set(v);
    }
  }

  std::size_t size() const { return tournament.size(); }
  bool is_terminal(Vertex v) const { return terminals.test(v); }
  std::size_t terminal_count() const { return terminals.count(); }
  std::vector<Vertex> terminal_list() const { return terminals.to_vector(); }

  /// Instance without vertex v (removed from S as well), budget unchanged.
  Instance without(Vertex v) const {
    Bitset s(size() - 1);
    for (Vertex u = 0, j = 0; u < static_cast<Vertex>(size()); ++u) {
      if (u == v) continue;
      if (terminals.test(u)) s.set(j);
      ++j;
    }
    return Instance(tournament.without(v), std::move(s), k);
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

inline Bitset vertex_set(std::size_t n, std::span<const Vertex> vs) {
  Bitset b(n);
  for (Vertex v : vs) b.set(v);
  return b;
}

/// T (*) F: reverse every arc of F. Throws InvalidArcError if an arc of F is
/// absent from T.
inline Tournament reverse_arcs(const Tournament& t, const ArcSet& f) {
  Tournament r = t;
  for (const Arc& a : f) {
    if (!t.has_arc(a)) throw InvalidArcError("arc " + to_string(a) + " is not in the tournament");
    r.orient(a.head, a.tail);
  }
  return r;
}

/// rev(F)
inline ArcSet reversed(const ArcSet& f) {
  std::vector<Arc> r;
  r.reserve(f.size());
  for (const Arc& a : f) r.push_back(a.reversed());
  return ArcSet(std::move(r));
}

/// T - F as a general digraph.
inline Digraph delete_arcs(const Tournament& t, const ArcSet& f) {
  Digraph d = t.as_digraph();
  for (const Arc& a : f) {
    if (!t.has_arc(a)) throw InvalidArcError("arc " + to_string(a) + " is not in the tournament");
    d.remove_arc(a.tail, a.head);
  }
  return d;
}

}  // namespace sfast
