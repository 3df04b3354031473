#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "golden.hpp"
#include "helpers.hpp"
#include "sfast/generators.hpp"
#include "sfast/oracle.hpp"

using namespace sfast;
using namespace sfast::test;

namespace {

// Plain enumeration of arc subsets by increasing size.
int subset_min_deletion(const Tournament& t, const Bitset& s) {
  const auto arcs = t.arcs().as_vector();
  const int m = static_cast<int>(arcs.size());
  for (int k = 0; k <= m; ++k) {
    std::vector<char> pick(m, 0);
    std::fill(pick.begin(), pick.begin() + k, 1);
    do {
      ArcSet f;
      for (int i = 0; i < m; ++i)
        if (pick[i]) f.insert(arcs[i]);
      if (is_s_acyclic(delete_arcs(t, f), s)) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return m;
}

// Subset DP over placed prefixes: state (P, L) where L holds the vertices
// placed after the last terminal. A new terminal pays for every arc into P;
// a non-terminal only for arcs into P \ L.
int held_karp_min_reversal(const Tournament& t, const Bitset& s) {
  const int n = static_cast<int>(t.size());
  const int full = 1 << n;
  constexpr int inf = 1 << 28;
  std::vector<std::vector<int>> best(full, std::vector<int>(full, inf));
  best[0][0] = 0;
  for (int p = 0; p < full; ++p)
    for (int l = p;; l = (l - 1) & p) {
      const int cur = best[p][l];
      if (cur < inf)
        for (int v = 0; v < n; ++v) {
          if (p >> v & 1) continue;
          int into = 0, into_outside_l = 0;
          for (int u = 0; u < n; ++u)
            if ((p >> u & 1) && t.has_arc(v, u)) {
              ++into;
              if (!(l >> u & 1)) ++into_outside_l;
            }
          const int np = p | (1 << v);
          if (s.test(v)) best[np][0] = std::min(best[np][0], cur + into);
          else best[np][l | (1 << v)] = std::min(best[np][l | (1 << v)], cur + into_outside_l);
        }
      if (l == 0) break;
    }
  return *std::min_element(best[full - 1].begin(), best[full - 1].end());
}

}  // namespace

TEST(ShortestSCycle, FindsTriangleAndNothingWhenAcyclic) {
  const auto c = shortest_s_cycle(three_cycle().as_digraph(), set_from_mask(3, 0b100));
  EXPECT_EQ(c.size(), 3U);
  EXPECT_TRUE(shortest_s_cycle(Tournament(5).as_digraph(), set_from_mask(5, 0b11111)).empty());
  Digraph d(4);
  d.add_arc(0, 1);
  d.add_arc(1, 0);
  d.add_arc(2, 3);
  d.add_arc(3, 2);
  const auto two = shortest_s_cycle(d, set_from_mask(4, 0b1000));
  EXPECT_EQ(two, (std::vector<Arc>{{3, 2}, {2, 3}}));
}

TEST(OracleMinDeletion, Examples) {
  EXPECT_EQ(oracle_min_deletion(Tournament(6), set_from_mask(6, 0b111111), 3), 0);
  EXPECT_EQ(oracle_min_deletion(three_cycle(), set_from_mask(3, 1), 3), 1);
  EXPECT_EQ(oracle_min_deletion(three_cycle(), set_from_mask(3, 1), 0), std::nullopt);
  EXPECT_EQ(oracle_min_deletion(three_cycle(), set_from_mask(3, 1), -1), std::nullopt);
}

TEST(OracleMinDeletion, WitnessIsASolution) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const Tournament t = random_tournament(n, rng);
    const Bitset s = set_from_mask(n, rng() % (std::uint64_t{1} << n));
    const auto w = oracle_min_deletion_witness(t, s, 20);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(is_s_acyclic(delete_arcs(t, *w), s));
    EXPECT_FALSE(has_s_triangle(reverse_arcs(t, *w), s).has_value());
  }
}

TEST(OracleMinDeletion, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 3);
    const Tournament t = random_tournament(n, rng);
    const Bitset s = set_from_mask(n, rng() % (std::uint64_t{1} << n));
    ASSERT_EQ(oracle_optimum(t, s), subset_min_deletion(t, s));
  }
}

TEST(OracleMinDeletion, BudgetGuardThrows) {
  std::mt19937_64 rng(1);
  const Tournament t = random_tournament(12, rng);
  EXPECT_THROW(oracle_optimum(t, set_from_mask(12, 0xfff), 10), SizeError);
}

TEST(OracleOrderings, Examples) {
  EXPECT_EQ(oracle_min_reversal_orderings(Tournament(5), set_from_mask(5, 0b11111)), 0);
  EXPECT_EQ(oracle_min_reversal_orderings(three_cycle(), set_from_mask(3, 1)), 1);
  EXPECT_THROW(oracle_min_reversal_orderings(Tournament(10), set_from_mask(10, 1)), SizeError);
}

TEST(OracleOrderings, MatchesHeldKarp) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 120; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Tournament t = random_tournament(n, rng);
    const Bitset s = set_from_mask(n, rng() % (std::uint64_t{1} << n));
    ASSERT_EQ(oracle_min_reversal_orderings(t, s), held_karp_min_reversal(t, s));
  }
}

TEST(OracleAgreement, AllTournamentsUpToFour) {
  for (int n = 1; n <= 4; ++n) {
    const int m = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      const Tournament t = tournament_from_mask(n, mask);
      for (std::uint64_t sm = 0; sm < (std::uint64_t{1} << n); ++sm) {
        const Bitset s = set_from_mask(n, sm);
        ASSERT_EQ(oracle_optimum(t, s), oracle_min_reversal_orderings(t, s));
      }
    }
  }
}

TEST(OracleAgreement, SampledFive) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 1000; ++rep) {
    const Tournament t = random_tournament(5, rng);
    const Bitset s = set_from_mask(5, rng() % 32);
    ASSERT_EQ(oracle_optimum(t, s), oracle_min_reversal_orderings(t, s));
  }
}

TEST(OracleMonotonicity, NonIncreasingUnderVertexDeletion) {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 150; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const Instance inst(random_tournament(n, rng), set_from_mask(n, rng() % (std::uint64_t{1} << n)), 0);
    const int whole = oracle_optimum(inst.tournament, inst.terminals);
    for (Vertex v = 0; v < n; ++v) {
      const Instance smaller = inst.without(v);
      EXPECT_LE(oracle_optimum(smaller.tournament, smaller.terminals), whole);
    }
  }
}

TEST(GenerateRandom, Basics) {
  const Instance one = generate_random({.n = 1, .s_count = 1, .seed = 4});
  EXPECT_EQ(one.size(), 1U);
  EXPECT_TRUE(one.tournament.arcs().empty());
  const GeneratorSpec spec{.n = 9, .s_count = 4, .seed = 99, .k = 2};
  EXPECT_EQ(generate_random(spec), generate_random(spec));
  EXPECT_EQ(generate_random(spec).terminal_list(), (std::vector<Vertex>{0, 1, 2, 3}));
  EXPECT_EQ(generate_random(spec).k, 2);
  EXPECT_THROW(generate_random({.n = 3, .s_count = 4}), PreconditionError);
}

TEST(GenerateRandom, GoldenOracleValues) {
  GoldenFile golden("oracle.tsv");
  for (const GeneratorSpec spec : {GeneratorSpec{.n = 8, .s_count = 3, .seed = 7}, GeneratorSpec{.n = 7, .s_count = 2, .seed = 7},
                                   GeneratorSpec{.n = 7, .s_count = 4, .seed = 1}}) {
    const Instance inst = generate_random(spec);
    const int value = oracle_optimum(inst.tournament, inst.terminals);
    EXPECT_EQ(value, oracle_min_reversal_orderings(inst.tournament, inst.terminals));
    const auto stored = golden.lookup(spec.fingerprint(), std::to_string(value));
    ASSERT_TRUE(stored.has_value()) << "no golden value for " << spec.fingerprint();
    EXPECT_EQ(std::to_string(value), *stored);
  }
}

TEST(GeneratePlanted, Basics) {
  const auto [zero, none] = generate_planted({.n = 8, .s_count = 3, .seed = 5, .planted_k = 0});
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(oracle_optimum(zero.tournament, zero.terminals), 0);

  const auto [one, flipped] = generate_planted({.n = 6, .s_count = 2, .seed = 5, .planted_k = 1});
  EXPECT_EQ(flipped.size(), 1U);
  EXPECT_EQ(one.k, 1);
  EXPECT_LE(oracle_optimum(one.tournament, one.terminals), 1);
  EXPECT_THROW(generate_planted({.n = 4, .s_count = 1}), PreconditionError);
  EXPECT_THROW(generate_planted({.n = 3, .s_count = 1, .planted_k = 4}), PreconditionError);
}

TEST(GeneratePlanted, PlantedSetAlwaysVerifies) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const int n = 2 + static_cast<int>(seed % 15);
    const int pairs = n * (n - 1) / 2;
    const GeneratorSpec spec{.n = n, .s_count = static_cast<int>(seed % (n + 1)), .seed = seed,
                             .planted_k = static_cast<int>(seed % std::min(pairs + 1, 6))};
    const auto [inst, planted] = generate_planted(spec);
    ASSERT_EQ(planted.size(), static_cast<std::size_t>(*spec.planted_k));
    EXPECT_TRUE(verify_solution(inst, planted, SolutionMode::reversal));
  }
}

TEST(GeneratePlanted, GoldenOracleValue) {
  GoldenFile golden("oracle.tsv");
  const GeneratorSpec spec{.n = 12, .s_count = 4, .seed = 2024, .planted_k = 3};
  const auto [inst, planted] = generate_planted(spec);
  const int value = oracle_optimum(inst.tournament, inst.terminals);
  EXPECT_LE(value, 3);
  const auto stored = golden.lookup(spec.fingerprint(), std::to_string(value));
  ASSERT_TRUE(stored.has_value()) << "no golden value for " << spec.fingerprint();
  EXPECT_EQ(std::to_string(value), *stored);
}

TEST(VerifySolution, PlantedFiveVertexOptimumTwo) {
  // First seed whose planted 5-vertex instance has optimum exactly 2.
  for (std::uint64_t seed = 0;; ++seed) {
    const auto [inst, planted] = generate_planted({.n = 5, .s_count = 2, .seed = seed, .planted_k = 2});
    if (oracle_optimum(inst.tournament, inst.terminals) != 2) continue;
    EXPECT_TRUE(verify_solution(inst, planted, SolutionMode::reversal));
    EXPECT_TRUE(verify_solution(inst, planted, SolutionMode::deletion));
    Instance tight = inst;
    tight.k = 1;
    EXPECT_FALSE(verify_solution(tight, planted, SolutionMode::reversal));
    break;
  }
}
