#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfast/classes.hpp"
#include "sfast/graph_algorithms.hpp"
#include "sfast/packing.hpp"

namespace sfast {

enum class RuleStatus { applied, not_applicable, trivial_yes, trivial_no };

/// Rules 1-9 keep their numbers; swaps are not a numbered rule.
enum class RuleId : int { r1 = 1, r2, r3, r4, r5, r6, r7, r8, r9, arc_swap };

inline std::string to_string(RuleStatus s) {
  switch (s) {
    case RuleStatus::applied: return "applied";
    case RuleStatus::not_applicable: return "not-applicable";
    case RuleStatus::trivial_yes: return "trivial-yes";
    case RuleStatus::trivial_no: return "trivial-no";
  }
  return "?";
}

inline std::string to_string(RuleId r) {
  if (r == RuleId::arc_swap) return "arc-swap";
  return "rule" + std::to_string(static_cast<int>(r));
}

/// Effects are in vertex labels; reversed arcs are listed in the orientation
/// they had before the rule fired.
struct RuleOutcome {
  RuleId rule = RuleId::r1;
  RuleStatus status = RuleStatus::not_applicable;
  std::optional<Instance> next;
  std::string note;
  ArcSet reversed;
  std::vector<Label> deleted;

  static RuleOutcome none(RuleId r) { return {r, RuleStatus::not_applicable, std::nullopt, {}, {}, {}}; }
  static RuleOutcome decided(RuleId r, RuleStatus s, std::string note) {
    return {r, s, std::nullopt, std::move(note), {}, {}};
  }
};

namespace detail {

inline ArcSet to_labels(const Tournament& t, const ArcSet& arcs) {
  std::vector<Arc> out;
  for (const Arc& a : arcs) out.push_back({t.label(a.tail), t.label(a.head)});
  return ArcSet(std::move(out));
}

inline RuleOutcome reverse_outcome(RuleId r, const Instance& inst, const ArcSet& f, int new_k, std::string note) {
  RuleOutcome o{r, RuleStatus::applied, Instance(reverse_arcs(inst.tournament, f), inst.terminals, new_k),
                std::move(note), to_labels(inst.tournament, f), {}};
  return o;
}

inline RuleOutcome delete_outcome(RuleId r, const Instance& inst, Vertex v, std::string note) {
  return {r, RuleStatus::applied, inst.without(v), std::move(note), {}, {inst.tournament.label(v)}};
}

inline std::string arc_label(const Tournament& t, const Arc& a) {
  return to_string(Arc{t.label(a.tail), t.label(a.head)});
}

}  // namespace detail

/// k < 0: no. k = 0: yes iff there is no S-triangle.
inline RuleOutcome rr1_sanity(const Instance& inst) {
  if (inst.k < 0) return RuleOutcome::decided(RuleId::r1, RuleStatus::trivial_no, "negative budget");
  if (inst.k > 0) return RuleOutcome::none(RuleId::r1);
  if (has_s_triangle(inst.tournament, inst.terminals))
    return RuleOutcome::decided(RuleId::r1, RuleStatus::trivial_no, "budget 0 with an S-triangle");
  return RuleOutcome::decided(RuleId::r1, RuleStatus::trivial_yes, "budget 0 and S-acyclic");
}

inline bool in_some_triangle(const Tournament& t, Vertex v) {
  const Bitset in = t.in_neighbors(v);
  bool found = false;
  t.out_neighbors(v).for_each([&](std::size_t w) {
    if (!found && Bitset::intersects(t.out_neighbors(static_cast<Vertex>(w)), in)) found = true;
  });
  return found;
}

/// Deletes the smallest terminal that lies in no triangle at all.
inline RuleOutcome rr2_triangle_free_terminal(const Instance& inst) {
  for (Vertex s : inst.terminal_list())
    if (!in_some_triangle(inst.tournament, s))
      return detail::delete_outcome(RuleId::r2, inst, s,
                                    "deleted terminal " + std::to_string(inst.tournament.label(s)) + " (in no triangle)");
  return RuleOutcome::none(RuleId::r2);
}

/// Smallest arc in at least k+1 S-triangles, if any.
inline std::optional<Arc> heavy_arc(const Tournament& t, const Bitset& s, int k) {
  if (k < 0) return std::nullopt;
  const auto need = static_cast<std::size_t>(k) + 1;
  for (Vertex u = 0; u < static_cast<Vertex>(t.size()); ++u) {
    const Bitset in_u = t.in_neighbors(u);
    for (std::size_t v = t.out_neighbors(u).find_first(); v != Bitset::npos; v = t.out_neighbors(u).find_next(v))
      if (s_triangle_count(t, s, in_u, u, static_cast<Vertex>(v)) >= need) return Arc{u, static_cast<Vertex>(v)};
  }
  return std::nullopt;
}

/// Reverses the smallest arc lying in k+1 S-triangles and spends one unit.
inline RuleOutcome rr3_many_triangles(const Instance& inst) {
  const auto e = heavy_arc(inst.tournament, inst.terminals, inst.k);
  if (!e) return RuleOutcome::none(RuleId::r3);
  return detail::reverse_outcome(RuleId::r3, inst, ArcSet{*e}, inst.k - 1,
                                 "reversed " + detail::arc_label(inst.tournament, *e) + " (in >= " +
                                     std::to_string(inst.k + 1) + " S-triangles)");
}

inline RuleOutcome rr4_bounded_terminal(const Instance& inst) {
  const long long bound = (static_cast<long long>(inst.k) + 1) * (inst.k + 1);
  if (static_cast<long long>(inst.terminal_count()) >= bound)
    return RuleOutcome::decided(RuleId::r4, RuleStatus::trivial_no,
                                "|S| = " + std::to_string(inst.terminal_count()) + " >= (k+1)^2 = " + std::to_string(bound));
  return RuleOutcome::none(RuleId::r4);
}

/// Safe-partition rule; fires only while |S| > 4k.
inline RuleOutcome rr5_safe_partition(const Instance& inst) {
  const Tournament& t = inst.tournament;
  const Bitset& s = inst.terminals;
  if (inst.k < 0 || static_cast<long long>(inst.terminal_count()) <= 4LL * inst.k) return RuleOutcome::none(RuleId::r5);
  const auto k = static_cast<std::size_t>(inst.k);
  const ConflictPacking c = conflict_packing(t, s);
  if (c.size() > k)
    return RuleOutcome::decided(RuleId::r5, RuleStatus::trivial_no,
                                "conflict packing of size " + std::to_string(c.size()) + " > k");
  const auto sigma = packing_ordering(t, s, c);
  const auto h = build_conflict_bipartite(t, s, c);
  const auto m = max_matching_min_vertex_cover(h);
  if (m.matching_size > k)
    return RuleOutcome::decided(RuleId::r5, RuleStatus::trivial_no,
                                "conflict matching of size " + std::to_string(m.matching_size) + " > k");
  const SafePartition p = safe_partition(t, sigma, h, m);
  if (p.external_backward.empty()) throw InternalInvariantError("safe partition has no external backward arc although |S| > 4k");
  const auto cost = static_cast<int>(p.external_backward.size());
  if (inst.k - cost < 0)
    return RuleOutcome::decided(RuleId::r5, RuleStatus::trivial_no,
                                std::to_string(cost) + " external backward arcs exceed the budget");
  return detail::reverse_outcome(RuleId::r5, inst, p.external_backward, inst.k - cost,
                                 "reversed " + std::to_string(cost) + " external backward arcs of a safe partition with " +
                                     std::to_string(p.parts.size()) + " parts");
}

inline RuleOutcome rr6_many_types(const Instance& inst) {
  const auto classes = equivalence_classes(inst.tournament, inst.terminals);
  const long long bound = 5LL * inst.k + 1;
  if (static_cast<long long>(classes.size()) > bound)
    return RuleOutcome::decided(RuleId::r6, RuleStatus::trivial_no,
                                std::to_string(classes.size()) + " non-trivial classes > 5k+1 = " + std::to_string(bound));
  return RuleOutcome::none(RuleId::r6);
}

inline RuleOutcome rr7_wrong_arcs(const Instance& inst, const ClassDecomposition& d) {
  const auto k = static_cast<std::size_t>(std::max(inst.k, 0));
  const std::size_t less = d.rless_tilde.count(), greater = d.rgreater_tilde.count();
  if (less > k || greater > k)
    return RuleOutcome::decided(RuleId::r7, RuleStatus::trivial_no,
                                "|R~<| = " + std::to_string(less) + ", |R~>| = " + std::to_string(greater) + " against k");
  return RuleOutcome::none(RuleId::r7);
}

/// Applies a single swap of the two arcs at the pivot.
inline RuleOutcome arc_swap_step(const Instance& inst, const ClassDecomposition& d) {
  const auto sw = find_arc_swap(inst.tournament, d);
  if (!sw) return RuleOutcome::none(RuleId::arc_swap);
  const Tournament& t = inst.tournament;
  return detail::reverse_outcome(RuleId::arc_swap, inst, ArcSet{sw->first, sw->second}, inst.k,
                                 "swapped " + detail::arc_label(t, sw->first) + " and " + detail::arc_label(t, sw->second) +
                                     " at " + std::to_string(t.label(sw->pivot)));
}

/// Swaps to a fixpoint, recomputing the decomposition of Z after each one.
/// Decomposition invariants are re-checked every round and propagate.
inline std::pair<Instance, ClassDecomposition> arc_swap_normalize(const Instance& inst, const ClassDecomposition& d,
                                                                  std::size_t max_swaps = 1'000'000) {
  Instance cur = inst;
  ClassDecomposition dec = d;
  const std::vector<Vertex> z = d.z.to_vector();
  for (std::size_t i = 0;; ++i) {
    if (i == max_swaps) throw InternalInvariantError("arc swapping did not reach a fixpoint");
    const auto sw = find_arc_swap(cur.tournament, dec);
    if (!sw) return {std::move(cur), std::move(dec)};
    cur.tournament.orient(sw->first.head, sw->first.tail);
    cur.tournament.orient(sw->second.head, sw->second.tail);
    dec = class_decomposition(cur, z);
  }
}

/// Class-size trigger for swapping and Rule 8.
inline long long class_trigger(int k, bool wide_threshold) {
  return wide_threshold ? 7LL * k + 5 : 6LL * k + 7;
}

inline RuleOutcome rr8_irrelevant_vertex(const Instance& inst, const ClassDecomposition& d, bool wide_threshold = false) {
  if (static_cast<long long>(d.z.count()) < class_trigger(inst.k, wide_threshold)) return RuleOutcome::none(RuleId::r8);
  const std::size_t v = d.zirrelevant.find_first();
  if (v == Bitset::npos) throw InternalInvariantError("class of size " + std::to_string(d.z.count()) + " has no irrelevant vertex");
  return detail::delete_outcome(RuleId::r8, inst, static_cast<Vertex>(v),
                                "deleted irrelevant vertex " + std::to_string(inst.tournament.label(static_cast<Vertex>(v))));
}

inline long long vertex_bound(int k) { return 30LL * k * k + 40LL * k + 7; }

inline RuleOutcome rr9_vertex_bound(const Instance& inst) {
  if (static_cast<long long>(inst.size()) > vertex_bound(inst.k))
    return RuleOutcome::decided(RuleId::r9, RuleStatus::trivial_no,
                                std::to_string(inst.size()) + " vertices > 30k^2+40k+7 = " + std::to_string(vertex_bound(inst.k)));
  return RuleOutcome::none(RuleId::r9);
}

}  // namespace sfast
