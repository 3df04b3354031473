#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sfast/tournament.hpp"

namespace sfast::test {

inline std::vector<std::pair<Vertex, Vertex>> pairs_of(int n) {
  std::vector<std::pair<Vertex, Vertex>> p;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) p.emplace_back(i, j);
  return p;
}

/// Bit b of mask set means pair b (in pairs_of order) points from high to low.
inline Tournament tournament_from_mask(int n, std::uint64_t mask) {
  Tournament t(static_cast<std::size_t>(n));
  const auto p = pairs_of(n);
  for (std::size_t b = 0; b < p.size(); ++b)
    if ((mask >> b) & 1U) t.orient(p[b].second, p[b].first);
  return t;
}

inline Tournament random_tournament(int n, std::mt19937_64& rng) {
  Tournament t(static_cast<std::size_t>(n));
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (rng() & 1U) t.orient(j, i);
  return t;
}

inline Bitset set_from_mask(int n, std::uint64_t mask) {
  Bitset b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1U) b.set(static_cast<std::size_t>(i));
  return b;
}

/// 0 -> 1 -> 2 -> 0
inline Tournament three_cycle() {
  Tournament t(3);
  t.orient(2, 0);
  return t;
}

inline Instance instance(Tournament t, std::vector<Vertex> s, int k) { return Instance(std::move(t), s, k); }

}  // namespace sfast::test
