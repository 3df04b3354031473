#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sfast/rules.hpp"

namespace sfast {

struct TraceEntry {
  RuleId rule = RuleId::r1;
  RuleStatus status = RuleStatus::applied;
  std::size_t n_before = 0, s_before = 0, n_after = 0, s_after = 0;
  int k_before = 0, k_after = 0;
  ArcSet reversed;             // labels, orientation before the step
  std::vector<Label> deleted;  // labels
  std::string note;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

enum class KernelStatus { reduced, trivial_yes, trivial_no };

inline std::string to_string(KernelStatus s) {
  switch (s) {
    case KernelStatus::reduced: return "reduced";
    case KernelStatus::trivial_yes: return "trivial-yes";
    case KernelStatus::trivial_no: return "trivial-no";
  }
  return "?";
}

struct KernelResult {
  KernelStatus status = KernelStatus::reduced;
  std::optional<Instance> kernel;
  std::vector<TraceEntry> trace;
  /// Arcs reversed by Rules 3 and 5, in input labels and in the orientation
  /// they had when reversed. Swaps are not included, so lifting replays the
  /// whole trace instead of using this set.
  ArcSet reversal_prefix;
};

struct KernelConfig {
  /// Trigger arc swaps and irrelevant-vertex deletion at class size 7k+5
  /// instead of 6k+7.
  bool wide_class_threshold = false;
  /// 0 picks a bound from the input size.
  std::size_t max_iterations = 0;
  /// Called with the instance a rule was applied to and the outcome.
  std::function<void(const Instance&, const RuleOutcome&)> observer;
};

/// Internal invariant failure together with the trace recorded so far.
class KernelInvariantError : public InternalInvariantError {
 public:
  KernelInvariantError(const std::string& what, std::vector<TraceEntry> trace)
      : InternalInvariantError(what + " (after " + std::to_string(trace.size()) + " trace entries)"), trace_(std::move(trace)) {}
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  std::vector<TraceEntry> trace_;
};

/// The rule the pipeline fires next on `inst`: the first outcome that is not
/// not-applicable, in pipeline order. A not-applicable Rule 9 outcome means
/// the instance is fully reduced.
inline RuleOutcome next_rule(const Instance& inst, const KernelConfig& cfg = {}) {
  const auto fired = [](const RuleOutcome& o) { return o.status != RuleStatus::not_applicable; };
  if (RuleOutcome o = rr1_sanity(inst); fired(o)) return o;
  if (RuleOutcome o = rr2_triangle_free_terminal(inst); fired(o)) return o;
  if (RuleOutcome o = rr3_many_triangles(inst); fired(o)) return o;
  if (RuleOutcome o = rr4_bounded_terminal(inst); fired(o)) return o;
  if (RuleOutcome o = rr5_safe_partition(inst); fired(o)) return o;
  if (RuleOutcome o = rr6_many_types(inst); fired(o)) return o;
  const long long k = inst.k;
  const long long trigger = class_trigger(inst.k, cfg.wide_class_threshold);
  for (const auto& cls : equivalence_classes(inst.tournament, inst.terminals)) {
    const auto size = static_cast<long long>(cls.members.size());
    if (size < 6 * k + 6) continue;
    const ClassDecomposition d = class_decomposition(inst, cls.members);
    if (RuleOutcome o = rr7_wrong_arcs(inst, d); fired(o)) return o;
    if (size < trigger) continue;
    if (RuleOutcome o = arc_swap_step(inst, d); fired(o)) return o;
    if (RuleOutcome o = rr8_irrelevant_vertex(inst, d, cfg.wide_class_threshold); fired(o)) return o;
  }
  return rr9_vertex_bound(inst);
}

namespace detail {

class Pipeline {
 public:
  Pipeline(const Instance& input, const KernelConfig& cfg) : cur_(input), cfg_(cfg) {
    const std::size_t n = input.size();
    cap_ = cfg.max_iterations != 0 ? cfg.max_iterations : 100 * (n * n + 10);
  }

  KernelResult run() {
    for (std::size_t it = 0;; ++it) {
      if (it == cap_) throw KernelInvariantError("iteration cap of " + std::to_string(cap_) + " reached", result_.trace);
      RuleOutcome o;
      try {
        o = next_rule(cur_, cfg_);
      } catch (const KernelInvariantError&) {
        throw;
      } catch (const InternalInvariantError& e) {
        throw KernelInvariantError(e.what(), result_.trace);
      }
      if (o.status == RuleStatus::not_applicable) {
        result_.status = KernelStatus::reduced;
        result_.kernel = cur_;
        return std::move(result_);
      }
      if (auto done = decide(o)) {
        result_.status = *done;
        return std::move(result_);
      }
      mutate(std::move(o));
    }
  }

 private:
  std::optional<KernelStatus> decide(const RuleOutcome& o) {
    if (o.status != RuleStatus::trivial_yes && o.status != RuleStatus::trivial_no) return std::nullopt;
    notify(o);
    record(o, cur_);
    return o.status == RuleStatus::trivial_yes ? KernelStatus::trivial_yes : KernelStatus::trivial_no;
  }

  void mutate(RuleOutcome o) {
    notify(o);
    if (!o.next) throw KernelInvariantError(to_string(o.rule) + " applied without a next instance", result_.trace);
    Instance next = std::move(*o.next);
    o.next.reset();
    if (next.k > cur_.k || next.size() > cur_.size())
      throw KernelInvariantError(to_string(o.rule) + " increased k or the vertex count", result_.trace);
    record(o, next);
    if (o.rule == RuleId::r3 || o.rule == RuleId::r5)
      for (const Arc& a : o.reversed) result_.reversal_prefix.insert(a);
    cur_ = std::move(next);
  }

  void notify(const RuleOutcome& o) {
    if (cfg_.observer) cfg_.observer(cur_, o);
  }

  void record(const RuleOutcome& o, const Instance& after) {
    TraceEntry e;
    e.rule = o.rule;
    e.status = o.status;
    e.n_before = cur_.size();
    e.s_before = cur_.terminal_count();
    e.k_before = cur_.k;
    e.n_after = after.size();
    e.s_after = after.terminal_count();
    e.k_after = after.k;
    e.reversed = o.reversed;
    e.deleted = o.deleted;
    e.note = o.note;
    result_.trace.push_back(std::move(e));
  }

  Instance cur_;
  const KernelConfig& cfg_;
  KernelResult result_;
  std::size_t cap_ = 0;
};

}  // namespace detail

inline KernelResult kernelize(const Instance& inst, const KernelConfig& cfg = {}) {
  return detail::Pipeline(inst, cfg).run();
}

/// Applies the recorded effects to `inst` (labels must match the input the
/// trace came from).
inline Instance replay(const Instance& inst, const std::vector<TraceEntry>& trace) {
  Instance cur = inst;
  for (const TraceEntry& e : trace) {
    if (e.status != RuleStatus::applied) continue;
    if (!e.reversed.empty()) {
      ArcSet local;
      for (const Arc& a : e.reversed) {
        const auto u = cur.tournament.index_of(a.tail), v = cur.tournament.index_of(a.head);
        if (!u || !v) throw PreconditionError("trace refers to a vertex that is not present");
        local.insert({*u, *v});
      }
      cur = Instance(reverse_arcs(cur.tournament, local), cur.terminals, e.k_after);
    }
    for (Label l : e.deleted) {
      const auto v = cur.tournament.index_of(l);
      if (!v) throw PreconditionError("trace deletes a vertex that is not present");
      cur = cur.without(*v);
    }
    cur.k = e.k_after;
  }
  return cur;
}

namespace detail {

/// Tournament on the original vertex set with a mask of vertices still
/// present; used to walk the trace backwards.
struct LiftState {
  Tournament t;
  Bitset alive;
  const Bitset& s;

  Instance induced_instance(int k) const {
    const auto keep = alive.to_vector();
    Bitset sub(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (s.test(keep[i])) sub.set(i);
    return Instance(t.induced(keep), std::move(sub), k);
  }

  /// T[alive] (*) f is S-acyclic and |f| <= k.
  bool accepts(const ArcSet& f, int k) const {
    if (static_cast<long long>(f.size()) > k) return false;
    Tournament r = t;
    for (const Arc& a : f) {
      if (!alive.test(a.tail) || !alive.test(a.head) || !t.has_arc(a)) return false;
      r.orient(a.head, a.tail);
    }
    const auto keep = alive.to_vector();
    Bitset sub(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (s.test(keep[i])) sub.set(i);
    return !has_s_triangle(r.induced(keep), sub).has_value();
  }

  /// Drops arcs of f greedily (ascending) while T[alive] - f stays
  /// S-acyclic.
  ArcSet deletion_minimal(ArcSet f) const {
    const auto keep = alive.to_vector();
    std::vector<int> local(t.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
    Bitset sub(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
      if (s.test(keep[i])) sub.set(i);
    const Tournament base = t.induced(keep);
    const auto to_local = [&](const ArcSet& g) {
      std::vector<Arc> out;
      for (const Arc& a : g) out.push_back({local[a.tail], local[a.head]});
      return ArcSet(std::move(out));
    };
    for (const Arc& a : std::vector<Arc>(f.begin(), f.end())) {
      ArcSet without = f;
      without.erase(a);
      if (is_s_acyclic(delete_arcs(base, to_local(without)), sub)) f = std::move(without);
    }
    return f;
  }

  /// Arcs of the current tournament whose direction differs in g (both over
  /// alive vertices).
  ArcSet diff_to(const Tournament& g) const {
    std::vector<Arc> out;
    alive.for_each([&](std::size_t u) {
      (t.out_neighbors(static_cast<Vertex>(u)) & alive).for_each([&](std::size_t v) {
        if (!g.has_arc(static_cast<Vertex>(u), static_cast<Vertex>(v)))
          out.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
      });
    });
    return ArcSet(std::move(out));
  }
};

}  // namespace detail

/// Maps a reversal solution of the final instance of `trace` (vertex indices
/// of that instance) back to a reversal solution of `original` (its vertex
/// indices). Each backward step is verified against the budget recorded in
/// the trace; optimal solutions stay optimal.
inline ArcSet lift_solution(const Instance& original, const std::vector<TraceEntry>& trace, const ArcSet& final_solution) {
  const Tournament& t0 = original.tournament;
  const auto index = [&](Label l) {
    const auto v = t0.index_of(l);
    if (!v) throw PreconditionError("trace refers to label " + std::to_string(l) + " that is not in the instance");
    return *v;
  };
  std::vector<const TraceEntry*> steps;
  for (const TraceEntry& e : trace)
    if (e.status == RuleStatus::applied) steps.push_back(&e);

  detail::LiftState st{t0, Bitset(t0.size()), original.terminals};
  st.alive.set_all();
  for (const TraceEntry* e : steps) {
    for (const Arc& a : e->reversed) st.t.orient(index(a.head), index(a.tail));
    for (Label l : e->deleted) st.alive.reset(index(l));
  }

  const std::vector<Vertex> final_vertices = st.alive.to_vector();
  ArcSet f;
  for (const Arc& a : final_solution) {
    if (a.tail < 0 || a.head < 0 || static_cast<std::size_t>(std::max(a.tail, a.head)) >= final_vertices.size())
      throw InvalidArcError("solution arc " + to_string(a) + " is out of range for the reduced instance");
    f.insert({final_vertices[a.tail], final_vertices[a.head]});
  }
  for (const Arc& a : f)
    if (!st.t.has_arc(a)) throw InvalidArcError("solution arc " + to_string(a) + " is not in the reduced instance");

  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const TraceEntry& e = **it;
    // st currently holds T_i; F solves it.
    Tournament solved = st.t;
    for (const Arc& a : f) solved.orient(a.head, a.tail);

    if (!e.deleted.empty()) {
      // Deletions keep a deletion-minimal solution unchanged.
      ArcSet minimal = st.deletion_minimal(f);
      for (Label l : e.deleted) st.alive.set(index(l));
      std::vector<ArcSet> candidates{minimal, f};
      bool ok = false;
      for (auto& c : candidates)
        if (st.accepts(c, e.k_before)) {
          f = std::move(c);
          ok = true;
          break;
        }
      if (!ok) throw InternalInvariantError("cannot lift through " + to_string(e.rule) + ": " + e.note);
      continue;
    }

    ArcSet reversed_now;  // the step's arcs as they appear in T_i
    for (const Arc& a : e.reversed) reversed_now.insert({index(a.head), index(a.tail)});
    std::vector<ArcSet> candidates;
    if (e.rule == RuleId::arc_swap) {
      // A swap maps a minimal solution containing neither swapped
      // arc to itself and otherwise to the set with the same outcome.
      ArcSet minimal = st.deletion_minimal(f);
      bool touches = false;
      for (const Arc& a : reversed_now) touches = touches || minimal.contains(a);
      Tournament solved_min = st.t;
      for (const Arc& a : minimal) solved_min.orient(a.head, a.tail);
      for (const Arc& a : reversed_now) st.t.orient(a.head, a.tail);
      if (!touches) candidates.push_back(minimal);
      candidates.push_back(st.diff_to(solved_min));
      candidates.push_back(st.diff_to(solved));
    } else {
      for (const Arc& a : reversed_now) st.t.orient(a.head, a.tail);
      candidates.push_back(st.diff_to(solved));
    }
    bool ok = false;
    for (auto& c : candidates)
      if (st.accepts(c, e.k_before)) {
        f = std::move(c);
        ok = true;
        break;
      }
    if (!ok) throw InternalInvariantError("cannot lift through " + to_string(e.rule) + ": " + e.note);
  }
  return f;
}

/// Lift for a kernel result whose final instance is `result.kernel` (or the
/// trivial-yes instance at the end of the trace).
inline ArcSet lift_solution(const Instance& original, const KernelResult& result, const ArcSet& final_solution) {
  return lift_solution(original, result.trace, final_solution);
}

}  // namespace sfast
