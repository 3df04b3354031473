#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sfast/random.hpp"
#include "sfast/tournament.hpp"

namespace sfast {

struct GeneratorSpec {
  int n = 0;
  int s_count = 0;
  std::uint64_t seed = 0;
  std::optional<int> planted_k;
  /// Budget of the generated instance; generate_planted overrides it with
  /// planted_k.
  int k = 0;

  /// Stable key for golden files.
  std::string fingerprint() const {
    std::string f = "n=" + std::to_string(n) + ",s=" + std::to_string(s_count) + ",seed=" + std::to_string(seed);
    if (planted_k) f += ",planted=" + std::to_string(*planted_k);
    return f + ",k=" + std::to_string(k);
  }
};

namespace detail {

inline void check_spec(const GeneratorSpec& spec) {
  if (spec.n < 0 || spec.s_count < 0 || spec.s_count > spec.n)
    throw PreconditionError("generator needs 0 <= s_count <= n");
  if (spec.planted_k && (*spec.planted_k < 0 || static_cast<long long>(*spec.planted_k) >
                                                     static_cast<long long>(spec.n) * (spec.n - 1) / 2))
    throw PreconditionError("planted_k must lie in [0, n(n-1)/2]");
}

inline Bitset first_terminals(int n, int s_count) {
  Bitset s(static_cast<std::size_t>(n));
  for (int i = 0; i < s_count; ++i) s.set(static_cast<std::size_t>(i));
  return s;
}

}  // namespace detail

/// Uniform orientation per pair; vertices 0..s_count-1 are the terminals.
inline Instance generate_random(const GeneratorSpec& spec) {
  detail::check_spec(spec);
  std::mt19937_64 rng(spec.seed);
  Tournament t(static_cast<std::size_t>(spec.n));
  for (Vertex i = 0; i < spec.n; ++i)
    for (Vertex j = i + 1; j < spec.n; ++j)
      if (rng() >> 63) t.orient(j, i);
  return Instance(std::move(t), detail::first_terminals(spec.n, spec.s_count), spec.k);
}

/// S-acyclic base along a random order, then planted_k distinct arcs flipped.
/// The returned set holds the flipped arcs as they appear in the instance, so
/// reversing it restores the base.
inline std::pair<Instance, ArcSet> generate_planted(const GeneratorSpec& spec) {
  detail::check_spec(spec);
  if (!spec.planted_k) throw PreconditionError("generate_planted needs planted_k");
  std::mt19937_64 rng(spec.seed);
  const int n = spec.n;
  const Bitset s = detail::first_terminals(n, spec.s_count);

  std::vector<Vertex> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);

  Tournament t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bool spans_terminal = false;
    for (int j = i + 1; j < n; ++j) {
      const Vertex a = order[i], b = order[j];
      if (s.test(a) || s.test(b) || spans_terminal || (rng() >> 63)) t.orient(a, b);
      else t.orient(b, a);
      if (s.test(b)) spans_terminal = true;
    }
  }

  // Partial Fisher-Yates over pair indices picks distinct pairs.
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<Arc> flipped;
  for (int f = 0; f < *spec.planted_k; ++f) {
    const auto pick = f + uniform_below(rng, pairs.size() - static_cast<std::size_t>(f));
    std::swap(pairs[f], pairs[pick]);
    auto [u, v] = pairs[f];
    if (!t.has_arc(u, v)) std::swap(u, v);
    t.orient(v, u);
    flipped.push_back({v, u});
  }
  return {Instance(std::move(t), s, *spec.planted_k), ArcSet(std::move(flipped))};
}

}  // namespace sfast
