#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "sfast/graph_algorithms.hpp"

using namespace sfast;
using namespace sfast::test;

namespace {

// Plain triple scan, independent of the bitset fast path.
bool brute_has_s_triangle(const Tournament& t, const Bitset& s) {
  const int n = static_cast<int>(t.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        if (t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a) && (s.test(a) || s.test(b) || s.test(c)))
          return true;
      }
  return false;
}

// Transitive closure; a terminal on a cycle reaches itself.
bool brute_s_acyclic(const Digraph& d, const Bitset& s) {
  const int n = static_cast<int>(d.size());
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) reach[u][v] = d.has_arc(u, v);
  for (int m = 0; m < n; ++m)
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (reach[u][m] && reach[m][v]) reach[u][v] = 1;
  for (int v = 0; v < n; ++v)
    if (s.test(v) && reach[v][v]) return false;
  return true;
}

void check_partition_invariants(const Tournament& t, const Bitset& s, const OrderedPartition& p) {
  const int n = static_cast<int>(t.size());
  std::vector<int> part_of(n, -1);
  for (std::size_t i = 0; i < p.parts.size(); ++i)
    for (Vertex v : p.parts[i]) {
      ASSERT_EQ(part_of[v], -1);
      part_of[v] = static_cast<int>(i);
    }
  for (int v = 0; v < n; ++v) ASSERT_NE(part_of[v], -1);
  for (int v = 0; v < n; ++v)
    if (s.test(v)) {
      EXPECT_EQ(p.parts[part_of[v]].size(), 1U);
    }
  for (const auto& part : p.parts) {
    const Tournament sub = t.induced(part);
    EXPECT_EQ(strongly_connected_components(sub).components.size(), 1U);
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && part_of[u] < part_of[v]) {
        EXPECT_TRUE(t.has_arc(u, v));
      }
  for (int idx : p.s_singletons) {
    ASSERT_EQ(p.parts[idx].size(), 1U);
    EXPECT_TRUE(s.test(p.parts[idx].front()));
  }
  EXPECT_EQ(p.s_singletons.size(), s.count());
}

}  // namespace

TEST(ReverseArcs, BackArcOfThreeCycle) {
  const Tournament r = reverse_arcs(three_cycle(), ArcSet{{2, 0}});
  EXPECT_EQ(r, Tournament(3));
}

TEST(ReverseArcs, EmptySetIsIdentity) {
  EXPECT_EQ(reverse_arcs(three_cycle(), ArcSet{}), three_cycle());
}

TEST(ReverseArcs, FullReversalFlipsOrientation) {
  const Tournament r = reverse_arcs(three_cycle(), ArcSet{{0, 1}, {1, 2}, {2, 0}});
  EXPECT_TRUE(r.has_arc(0, 2));
  EXPECT_TRUE(r.has_arc(2, 1));
  EXPECT_TRUE(r.has_arc(1, 0));
}

TEST(ReverseArcs, AbsentArcThrows) {
  EXPECT_THROW(reverse_arcs(three_cycle(), ArcSet{{0, 2}}), InvalidArcError);
}

TEST(ReverseArcs, InvolutionOnRandomTournaments) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const Tournament t = random_tournament(n, rng);
    std::vector<Arc> f;
    for (const Arc& a : t.arcs())
      if (rng() % 3 == 0) f.push_back(a);
    const ArcSet fs(f);
    EXPECT_EQ(reverse_arcs(reverse_arcs(t, fs), reversed(fs)), t);
  }
}

TEST(Tournament, FromArcsValidates) {
  const std::vector<Arc> dup{{0, 1}, {1, 0}, {1, 2}, {0, 2}};
  EXPECT_THROW(Tournament::from_arcs(3, dup), InvalidArcError);
  const std::vector<Arc> missing{{0, 1}, {1, 2}};
  EXPECT_THROW(Tournament::from_arcs(3, missing), InvalidArcError);
  const std::vector<Arc> loop{{0, 0}};
  EXPECT_THROW(Tournament::from_arcs(1, loop), InvalidArcError);
  const std::vector<Arc> ok{{0, 1}, {1, 2}, {2, 0}};
  EXPECT_EQ(Tournament::from_arcs(3, ok), three_cycle());
}

TEST(Tournament, InducedKeepsLabels) {
  Tournament t = three_cycle();
  t.set_labels({10, 20, 30});
  const Tournament u = t.without(1);
  EXPECT_EQ(u.labels(), (std::vector<Label>{10, 30}));
  EXPECT_TRUE(u.has_arc(1, 0));
  EXPECT_EQ(u.index_of(30), std::optional<Vertex>(1));
  EXPECT_FALSE(u.index_of(20).has_value());
}

TEST(IsSAcyclic, Examples) {
  EXPECT_TRUE(is_s_acyclic(Tournament(4), set_from_mask(4, 0b1111)));
  EXPECT_FALSE(is_s_acyclic(three_cycle(), set_from_mask(3, 0b001)));
  Digraph d(4);
  d.add_arc(0, 1);
  d.add_arc(1, 2);
  d.add_arc(2, 0);
  EXPECT_TRUE(is_s_acyclic(d, set_from_mask(4, 0b1000)));
}

TEST(HasSTriangle, Examples) {
  const auto tri = has_s_triangle(three_cycle(), set_from_mask(3, 0b001));
  ASSERT_TRUE(tri.has_value());
  EXPECT_EQ(*tri, (Triangle{0, 1, 2}));
  EXPECT_FALSE(has_s_triangle(Tournament(5), set_from_mask(5, 0b10101)).has_value());

  Tournament t(5);
  t.orient(4, 2);  // 2 -> 3 -> 4 -> 2
  const Bitset s = set_from_mask(5, 0b00011);
  EXPECT_EQ(has_s_triangle(t, s).has_value(), brute_has_s_triangle(t, s));
  EXPECT_FALSE(has_s_triangle(t, s).has_value());
}

TEST(HasSTriangle, CharacterizationExhaustiveUpToFive) {
  for (int n = 1; n <= 5; ++n) {
    const int m = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      const Tournament t = tournament_from_mask(n, mask);
      for (std::uint64_t sm = 0; sm < (std::uint64_t{1} << n); ++sm) {
        const Bitset s = set_from_mask(n, sm);
        const bool tri = has_s_triangle(t, s).has_value();
        ASSERT_EQ(tri, brute_has_s_triangle(t, s));
        ASSERT_EQ(!tri, is_s_acyclic(t, s));
        ASSERT_EQ(!tri, brute_s_acyclic(t.as_digraph(), s));
      }
    }
  }
}

TEST(HasSTriangle, CharacterizationSampledSixSeven) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 3000; ++rep) {
    const int n = 6 + rep % 2;
    const Tournament t = random_tournament(n, rng);
    const Bitset s = set_from_mask(n, rng() % (std::uint64_t{1} << n));
    const bool tri = has_s_triangle(t, s).has_value();
    ASSERT_EQ(tri, brute_has_s_triangle(t, s));
    ASSERT_EQ(!tri, is_s_acyclic(t, s));
  }
}

TEST(HasSTriangle, ReturnsLexicographicallySmallest) {
  std::mt19937_64 rng(9);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const Tournament t = random_tournament(n, rng);
    const Bitset s = set_from_mask(n, rng() % (std::uint64_t{1} << n));
    std::optional<Triangle> best;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = a + 1; c < n; ++c)
          if (b != c && t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a) &&
              (s.test(a) || s.test(b) || s.test(c))) {
            const Triangle tr{a, b, c};
            if (!best || tr < *best) best = tr;
          }
    EXPECT_EQ(has_s_triangle(t, s), best);
  }
}

TEST(STrianglesThroughArc, Examples) {
  EXPECT_EQ(s_triangles_through_arc(three_cycle(), set_from_mask(3, 1), Arc{0, 1}), std::vector<Vertex>{2});
  EXPECT_TRUE(s_triangles_through_arc(Tournament(4), set_from_mask(4, 0b1111), Arc{0, 3}).empty());
  EXPECT_THROW(s_triangles_through_arc(three_cycle(), set_from_mask(3, 1), Arc{1, 0}), InvalidArcError);
}

TEST(STrianglesThroughArc, FiveVertexConstruction) {
  // u=0, v=1, terminals 2,3,4 with v->s_i->u and s_2->s_3->s_4, s_2->s_4.
  Tournament t(5);
  for (Vertex s : {2, 3, 4}) t.orient(s, 0);
  const Bitset s = set_from_mask(5, 0b11100);
  std::vector<Vertex> brute;
  for (Vertex w = 0; w < 5; ++w)
    if (w != 0 && w != 1 && t.has_arc(1, w) && t.has_arc(w, 0) && (s.test(0) || s.test(1) || s.test(w)))
      brute.push_back(w);
  EXPECT_EQ(brute, (std::vector<Vertex>{2, 3, 4}));
  EXPECT_EQ(s_triangles_through_arc(t, s, Arc{0, 1}), brute);
}

TEST(STopologicalOrdering, Examples) {
  const auto p = s_topological_ordering(Tournament(3), set_from_mask(3, 0b010));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->parts, (std::vector<std::vector<Vertex>>{{0}, {1}, {2}}));
  EXPECT_EQ(p->s_singletons, std::vector<int>{1});

  EXPECT_FALSE(s_topological_ordering(three_cycle(), set_from_mask(3, 1)).has_value());

  Tournament t(4);
  t.orient(3, 1);
  const auto q = s_topological_ordering(t, set_from_mask(4, 0b0001));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(q->parts, (std::vector<std::vector<Vertex>>{{0}, {1, 2, 3}}));
}

TEST(STopologicalOrdering, CharacterizationAndInvariants) {
  for (int n = 1; n <= 5; ++n) {
    const int m = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      const Tournament t = tournament_from_mask(n, mask);
      for (std::uint64_t sm = 0; sm < (std::uint64_t{1} << n); sm += (n == 5 ? 3 : 1)) {
        const Bitset s = set_from_mask(n, sm);
        const auto p = s_topological_ordering(t, s);
        ASSERT_EQ(p.has_value(), !has_s_triangle(t, s).has_value());
        if (p) check_partition_invariants(t, s, *p);
      }
    }
  }
}

TEST(StronglyConnectedComponents, Examples) {
  EXPECT_EQ(strongly_connected_components(three_cycle()).components,
            (std::vector<std::vector<Vertex>>{{0, 1, 2}}));
  EXPECT_EQ(strongly_connected_components(Tournament(3)).components,
            (std::vector<std::vector<Vertex>>{{0}, {1}, {2}}));
  Tournament t(6);
  t.orient(2, 0);
  t.orient(5, 3);
  EXPECT_EQ(strongly_connected_components(t).components,
            (std::vector<std::vector<Vertex>>{{0, 1, 2}, {3, 4, 5}}));
  // Right block listed first by id but dominated: condensation order wins.
  Tournament r(6);
  for (Vertex a : {0, 1, 2})
    for (Vertex b : {3, 4, 5}) r.orient(b, a);
  r.orient(2, 0);
  r.orient(5, 3);
  EXPECT_EQ(strongly_connected_components(r).components,
            (std::vector<std::vector<Vertex>>{{3, 4, 5}, {0, 1, 2}}));
}

TEST(StronglyConnectedComponents, DigraphTiesBySmallestVertex) {
  Digraph d(5);
  d.add_arc(3, 4);
  d.add_arc(4, 3);
  d.add_arc(1, 0);
  const auto scc = strongly_connected_components(d);
  EXPECT_EQ(scc.components, (std::vector<std::vector<Vertex>>{{1}, {0}, {2}, {3, 4}}));
}

TEST(SBackwardArcs, Examples) {
  const std::vector<Vertex> id3{0, 1, 2};
  EXPECT_TRUE(s_backward_arcs(Tournament(3), set_from_mask(3, 0b111), id3).empty());
  EXPECT_EQ(s_backward_arcs(three_cycle(), set_from_mask(3, 1), id3), (ArcSet{{2, 0}}));
  Tournament t(4);
  t.orient(3, 1);
  const std::vector<Vertex> id4{0, 1, 2, 3};
  EXPECT_TRUE(s_backward_arcs(t, set_from_mask(4, 0b0100), id4).contains(Arc{3, 1}));
  EXPECT_TRUE(s_backward_arcs(t, set_from_mask(4, 0b0001), id4).empty());
}

TEST(SBackwardArcs, SufficiencyExhaustiveUpToFive) {
  for (int n = 1; n <= 5; ++n) {
    const int m = n * (n - 1) / 2;
    std::vector<Vertex> sigma(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      const Tournament t = tournament_from_mask(n, mask);
      for (std::uint64_t sm = 1; sm < (std::uint64_t{1} << n); ++sm) {
        const Bitset s = set_from_mask(n, sm);
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
          const ArcSet b = s_backward_arcs(t, s, sigma);
          ASSERT_FALSE(has_s_triangle(reverse_arcs(t, b), s).has_value());
        } while (std::next_permutation(sigma.begin(), sigma.end()));
      }
    }
  }
}

TEST(VerifySolution, Examples) {
  const Instance one = instance(three_cycle(), {0}, 1);
  EXPECT_TRUE(verify_solution(one, ArcSet{{2, 0}}, SolutionMode::deletion));
  EXPECT_TRUE(verify_solution(one, ArcSet{{2, 0}}, SolutionMode::reversal));
  EXPECT_FALSE(verify_solution(instance(three_cycle(), {0}, 0), ArcSet{}, SolutionMode::reversal));
  EXPECT_THROW(verify_solution(one, ArcSet{{0, 2}}, SolutionMode::deletion), InvalidArcError);
  EXPECT_FALSE(verify_solution(instance(three_cycle(), {0}, 0), ArcSet{{2, 0}}, SolutionMode::reversal));
}

TEST(VerifySolution, DeletionDiffersFromReversalOnNonMinimalSets) {
  // Deleting all three arcs of a 3-cycle works; reversing them does not.
  const Instance inst = instance(three_cycle(), {0}, 3);
  const ArcSet all{{0, 1}, {1, 2}, {2, 0}};
  EXPECT_TRUE(verify_solution(inst, all, SolutionMode::deletion));
  EXPECT_FALSE(verify_solution(inst, all, SolutionMode::reversal));
}
