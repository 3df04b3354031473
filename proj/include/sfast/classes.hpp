#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "sfast/tournament.hpp"

namespace sfast {

/// Non-terminals grouped by their set of terminal in-neighbors.
struct EquivalenceClass {
  Bitset type;  // terminals s with (s,v) an arc
  std::vector<Vertex> members;
};

/// Non-empty classes, ordered by their smallest member.
inline std::vector<EquivalenceClass> equivalence_classes(const Tournament& t, const Bitset& s) {
  std::vector<EquivalenceClass> classes;
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) {
    if (s.test(v)) continue;
    Bitset type = t.in_neighbors(v) & s;
    auto it = std::find_if(classes.begin(), classes.end(), [&](const EquivalenceClass& c) { return c.type == type; });
    if (it == classes.end()) classes.push_back({std::move(type), {v}});
    else it->members.push_back(v);
  }
  return classes;
}

/// Degree-based split of one large class Z and of the remaining
/// non-terminals R relative to it. All sets are over V(T).
struct ClassDecomposition {
  int k = 0;
  Bitset z, s1, s2;
  Bitset zprime, zminus, zplus;
  Bitset rless, rgreater, rless_tilde, rgreater_tilde;
  Bitset zrelevant, zirrelevant;
  Bitset z1, z2;  // IN_{Z'}(Z~- u R<) and OUT_{Z'}(Z~+ u R>)

  Bitset low_in() const { return zminus | rless; }
  Bitset low_out() const { return zplus | rgreater; }
};

/// Members of `into` that are in-neighbors (resp. out-neighbors) of some
/// vertex of `from`.
inline Bitset in_neighbors_within(const Tournament& t, const Bitset& from, const Bitset& into) {
  Bitset r(t.size());
  from.for_each([&](std::size_t v) { r |= t.in_neighbors(static_cast<Vertex>(v)) & into; });
  return r;
}
inline Bitset out_neighbors_within(const Tournament& t, const Bitset& from, const Bitset& into) {
  Bitset r(t.size());
  from.for_each([&](std::size_t v) { r |= t.out_neighbors(static_cast<Vertex>(v)) & into; });
  return r;
}

inline ClassDecomposition class_decomposition(const Instance& inst, const std::vector<Vertex>& z_members) {
  const Tournament& t = inst.tournament;
  const Bitset& s = inst.terminals;
  const int k = inst.k;
  const std::size_t threshold = static_cast<std::size_t>(k) + 1;
  if (k < 0 || z_members.size() < 6 * threshold)
    throw PreconditionError("class decomposition needs |Z| >= 6k+6");

  ClassDecomposition d;
  d.k = k;
  d.z = vertex_set(t.size(), z_members);
  for (Vertex v : z_members)
    if (s.test(v) || (t.in_neighbors(v) & s) != (t.in_neighbors(z_members.front()) & s))
      throw PreconditionError("Z is not an equivalence class");
  d.s1 = t.in_neighbors(z_members.front()) & s;
  d.s2 = s - d.s1;

  d.zprime = d.zminus = d.zplus = Bitset(t.size());
  for (Vertex v : z_members) {
    const std::size_t out_z = Bitset::intersect_count(t.out_neighbors(v), d.z);
    const std::size_t in_z = z_members.size() - 1 - out_z;
    if (in_z >= threshold && out_z >= threshold) d.zprime.set(v);
    if (in_z <= static_cast<std::size_t>(k)) d.zminus.set(v);
    if (out_z <= static_cast<std::size_t>(k)) d.zplus.set(v);
  }
  if ((d.zminus & d.zplus).any()) throw InternalInvariantError("a class member has low in- and out-degree");
  if ((d.zminus | d.zplus).count() > 4 * static_cast<std::size_t>(k) + 2)
    throw InternalInvariantError("more than 4k+2 low-degree class members");

  Bitset r = ~(s | d.z);
  d.rless = d.rgreater = d.rless_tilde = d.rgreater_tilde = Bitset(t.size());
  std::vector<Vertex> r_plus, r_minus;
  r.for_each([&](std::size_t rv) {
    const auto v = static_cast<Vertex>(rv);
    const std::size_t out_zp = Bitset::intersect_count(t.out_neighbors(v), d.zprime);
    const std::size_t in_zp = d.zprime.count() - out_zp;
    const bool low_in = in_zp <= static_cast<std::size_t>(k), low_out = out_zp <= static_cast<std::size_t>(k);
    if (low_in && !low_out) {
      d.rless.set(rv);
      if (in_zp >= 1) d.rless_tilde.set(rv);
    } else if (!low_in && low_out) {
      d.rgreater.set(rv);
      if (out_zp >= 1) d.rgreater_tilde.set(rv);
    } else if (low_in) {
      r_minus.push_back(v);
    } else {
      r_plus.push_back(v);
    }
  });
  if (!r_plus.empty() || !r_minus.empty())
    throw InternalInvariantError("vertex " + std::to_string(r_plus.empty() ? r_minus.front() : r_plus.front()) +
                                 " lies in neither R< nor R>");

  d.z1 = in_neighbors_within(t, d.low_in(), d.zprime);
  d.z2 = out_neighbors_within(t, d.low_out(), d.zprime);
  d.zrelevant = d.z1 | d.z2;
  d.zirrelevant = d.zprime - d.zrelevant;
  return d;
}

/// One arc swap inside a large class: the two arcs to reverse, listed
/// in their current orientation.
struct ArcSwap {
  Arc first, second;
  Vertex pivot;  // the low-degree vertex z
};

/// Next swap that moves an in-neighbor of Z~- u R< (resp. out-neighbor of
/// Z~+ u R>) from outside the anchor set onto an anchor. Anchors are the
/// first k+1 members of Z1 (resp. Z2). Smallest vertices are preferred.
inline std::optional<ArcSwap> find_arc_swap(const Tournament& t, const ClassDecomposition& d) {
  const auto anchors_of = [&](const Bitset& side) {
    Bitset a(t.size());
    std::size_t taken = 0;
    for (std::size_t v = side.find_first(); v != Bitset::npos && taken <= static_cast<std::size_t>(d.k);
         v = side.find_next(v), ++taken)
      a.set(v);
    return a;
  };
  const Bitset anchors1 = anchors_of(d.z1), outside1 = d.z1 - anchors1;
  if (outside1.any())
    for (Vertex v : d.low_in().to_vector()) {
      const std::size_t u = Bitset::first_common(t.in_neighbors(v), outside1);
      if (u == Bitset::npos) continue;
      const std::size_t w = Bitset::first_common(t.out_neighbors(v), anchors1);
      if (w == Bitset::npos) throw InternalInvariantError("no anchor out-neighbor for vertex " + std::to_string(v));
      return ArcSwap{{static_cast<Vertex>(u), v}, {v, static_cast<Vertex>(w)}, v};
    }
  const Bitset anchors2 = anchors_of(d.z2), outside2 = d.z2 - anchors2;
  if (outside2.any())
    for (Vertex v : d.low_out().to_vector()) {
      const std::size_t u = Bitset::first_common(t.out_neighbors(v), outside2);
      if (u == Bitset::npos) continue;
      const std::size_t w = Bitset::first_common(t.in_neighbors(v), anchors2);
      if (w == Bitset::npos) throw InternalInvariantError("no anchor in-neighbor for vertex " + std::to_string(v));
      return ArcSwap{{v, static_cast<Vertex>(u)}, {static_cast<Vertex>(w), v}, v};
    }
  return std::nullopt;
}

}  // namespace sfast
