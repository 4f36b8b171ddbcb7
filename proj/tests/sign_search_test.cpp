#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "revga/hp_distance.hpp"
#include "revga/oracles.hpp"
#include "revga/sign_search.hpp"

using namespace revga;

namespace {

UnsignedPermutation U(std::vector<int> v) { return UnsignedPermutation(std::move(v)); }

const SignGenome kAllPlus4{true, true, true, true};

bool same_history(const GaResult& a, const GaResult& b) {
  if (a.history.size() != b.history.size()) return false;
  for (std::size_t k = 0; k < a.history.size(); ++k) {
    if (a.history[k].best != b.history[k].best || a.history[k].mean != b.history[k].mean) return false;
  }
  return true;
}

}  // namespace

TEST(GaConfig, DefaultsAndValidation) {
  GaConfig c;
  EXPECT_EQ(c.effective_population(10), 100u);
  EXPECT_EQ(c.effective_population(1), 2u);
  EXPECT_EQ(c.effective_population(100), 4096u);
  EXPECT_EQ(c.effective_max_generations(30), 300u);
  EXPECT_DOUBLE_EQ(c.crossover_rate, 0.5);
  EXPECT_DOUBLE_EQ(c.mutation_rate, 0.3);
  EXPECT_EQ(c.stagnation_generations, 3u);
  EXPECT_NO_THROW(c.validate());

  GaConfig bad = c;
  bad.mutation_rate = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.crossover_rate = -0.1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.population_size = 1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.stagnation_generations = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(HeuristicInit, AscendingStripsArePositive) {
  Rng rng(1);
  const auto pop = heuristic_initialize(U({3, 4, 1, 2}), GaConfig{}, rng);
  ASSERT_EQ(pop.size(), 16u);
  for (const auto& g : pop) EXPECT_EQ(g, kAllPlus4);
}

TEST(HeuristicInit, IdentityStartsSorted) {
  Rng rng(2);
  const auto p = UnsignedPermutation::identity(6);
  for (const auto& g : heuristic_initialize(p, GaConfig{}, rng)) {
    EXPECT_EQ(g, SignGenome(6, true));
    EXPECT_EQ(fitness(g, p), 0u);
  }
}

TEST(HeuristicInit, DescendingStripsAreNegativeSingletonsFree) {
  Rng rng(3);
  // [5 4 3] is descending; 1, 6 and 2 are singletons and stay free.
  const auto p = U({5, 4, 3, 1, 6, 2});
  const auto pop = heuristic_initialize(p, GaConfig{}, rng);
  std::set<SignGenome> distinct;
  for (const auto& g : pop) {
    EXPECT_FALSE(g[0]);
    EXPECT_FALSE(g[1]);
    EXPECT_FALSE(g[2]);
    distinct.insert(g);
  }
  EXPECT_GT(distinct.size(), 1u);
}

TEST(HeuristicInit, NoStripsMeansUniformRandom) {
  Rng rng(4);
  const auto p = U({2, 4, 1, 3, 5});  // 5 follows 3: no +-1 neighbours
  GaConfig c;
  c.population_size = 4000;
  const auto pop = heuristic_initialize(p, c, rng);
  for (std::size_t k = 0; k < p.size(); ++k) {
    std::size_t plus = 0;
    for (const auto& g : pop) plus += g[k];
    // Fair coin, 4000 draws: sd ~ 31.6, allow 4 sd.
    EXPECT_NEAR(static_cast<double>(plus), 2000.0, 127.0);
  }
}

TEST(HeuristicInit, RandomModeIgnoresStrips) {
  Rng rng(5);
  GaConfig c;
  c.init = InitMode::random;
  std::set<SignGenome> distinct;
  for (const auto& g : heuristic_initialize(U({3, 4, 1, 2}), c, rng)) distinct.insert(g);
  EXPECT_GT(distinct.size(), 1u);
}

TEST(Fitness, Examples) {
  EXPECT_EQ(fitness(SignGenome(5, true), UnsignedPermutation::identity(5)), 0u);
  const auto p = U({2, 1});
  // BFS oracle: -2 -1 is one full reversal from +1 +2.
  EXPECT_EQ(fitness({false, false}, p), 1u);
  std::size_t best = 100;
  for (int mask = 0; mask < 4; ++mask) best = std::min(best, fitness({(mask & 1) != 0, (mask & 2) != 0}, p));
  EXPECT_EQ(best, bfs_unsigned_distance(p));
  EXPECT_EQ(best, 1u);
}

TEST(Selection, IdenticalPopulationReturnsThatGenome) {
  Rng rng(6);
  const std::vector<SignGenome> pop(5, SignGenome{true, false, true});
  const auto [a, b] = select_parents(pop, std::vector<std::size_t>(5, 3), rng);
  EXPECT_EQ(a, pop[0]);
  EXPECT_EQ(b, pop[0]);
}

TEST(Selection, LinearRankWeights) {
  const RankSelector two({1, 10});
  EXPECT_DOUBLE_EQ(two.probability(0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(two.probability(1), 1.0 / 3.0);
  const RankSelector reversed({10, 1});
  EXPECT_DOUBLE_EQ(reversed.probability(1), 2.0 / 3.0);
  EXPECT_THROW(RankSelector(std::vector<std::size_t>{}), std::invalid_argument);
}

TEST(Selection, EmpiricalFrequenciesMatchRankWeights) {
  // Fitnesses 7, 2, 9, 4 rank as index 1, 3, 0, 2 with weights 4, 3, 2, 1 of 10.
  const std::vector<std::size_t> fit{7, 2, 9, 4};
  const std::vector<double> expected{0.2, 0.4, 0.1, 0.3};
  const RankSelector sel(fit);
  Rng rng(8);
  const int draws = 10000;
  std::vector<int> counts(4, 0);
  for (int k = 0; k < draws; ++k) ++counts[sel.draw(rng)];
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_DOUBLE_EQ(sel.probability(k), expected[k]);
    const double sd = std::sqrt(draws * expected[k] * (1 - expected[k]));
    EXPECT_NEAR(counts[k], draws * expected[k], 3 * sd) << "index " << k;
  }
}

TEST(Crossover, Examples) {
  Rng rng(9);
  const SignGenome a{true, false, true, true, false};
  for (int k = 0; k < 50; ++k) {
    const auto [c1, c2] = crossover(a, a, 1.0, rng);
    EXPECT_EQ(c1, a);
    EXPECT_EQ(c2, a);
  }

  const SignGenome ones(6, true), zeros(6, false);
  std::set<std::size_t> cuts;
  for (int k = 0; k < 200; ++k) {
    const auto [c1, c2] = crossover(ones, zeros, 1.0, rng);
    std::size_t t = 0;
    while (t < 6 && c1[t]) ++t;
    ASSERT_GE(t, 1u);
    ASSERT_LE(t, 5u);
    for (std::size_t m = 0; m < 6; ++m) {
      ASSERT_EQ(c1[m], m < t);
      ASSERT_EQ(c2[m], m >= t);
    }
    cuts.insert(t);
  }
  EXPECT_EQ(cuts.size(), 5u);

  const auto [s1, s2] = crossover(SignGenome{true}, SignGenome{false}, 1.0, rng);
  EXPECT_EQ(s1, SignGenome{true});
  EXPECT_EQ(s2, SignGenome{false});

  const auto [r1, r2] = crossover(ones, zeros, 0.0, rng);
  EXPECT_EQ(r1, ones);
  EXPECT_EQ(r2, zeros);
  EXPECT_THROW(crossover(ones, SignGenome(3, true), 0.5, rng), std::invalid_argument);
}

TEST(Mutation, Examples) {
  Rng rng(10);
  const SignGenome g{true, false, true};
  for (int k = 0; k < 100; ++k) EXPECT_EQ(mutate(g, 0.0, rng), g);
  EXPECT_EQ(mutate(SignGenome{true}, 1.0, rng), SignGenome{false});

  for (int k = 0; k < 100; ++k) {
    const auto m = mutate(g, 1.0, rng);
    int diff = 0;
    for (std::size_t b = 0; b < g.size(); ++b) diff += m[b] != g[b];
    ASSERT_EQ(diff, 1);
  }
}

TEST(Mutation, FiresAtConfiguredRate) {
  Rng rng(11);
  const SignGenome g(12, true);
  const int calls = 10000;
  int mutated = 0;
  for (int k = 0; k < calls; ++k) mutated += mutate(g, 0.3, rng) != g;
  const double sd = std::sqrt(calls * 0.3 * 0.7);
  EXPECT_NEAR(mutated, calls * 0.3, 3 * sd);
}

TEST(Mutation, PerBitMode) {
  Rng rng(12);
  const SignGenome g(1000, true);
  const auto m = mutate(g, 0.3, rng, MutationMode::per_bit);
  int flipped = 0;
  for (bool b : m) flipped += !b;
  EXPECT_NEAR(flipped, 300, 3 * std::sqrt(1000 * 0.21));
}

TEST(RunGa, IdentityStopsAtStagnationLimit) {
  Rng rng(13);
  const auto r = run_ga(UnsignedPermutation::identity(7), GaConfig{}, rng);
  EXPECT_EQ(r.best_distance, 0u);
  EXPECT_TRUE(r.sorting_sequence.empty());
  EXPECT_EQ(r.generations_run, 3u);
  EXPECT_EQ(r.history.size(), 4u);
}

TEST(RunGa, TwoOneFindsOptimum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto r = run_ga(U({2, 1}), GaConfig{}, rng);
    EXPECT_EQ(r.best_distance, 1u);
    EXPECT_EQ(r.sorting_sequence, (SortingSequence{{1, 3}}));
  }
}

TEST(RunGa, SizeOneInput) {
  Rng rng(14);
  const auto r = run_ga(U({1}), GaConfig{}, rng);
  EXPECT_EQ(r.best_distance, 0u);
  EXPECT_EQ(r.best_genome, SignGenome{true});
}

TEST(RunGa, RandomEightIsValidAndNeverBelowExact) {
  Rng inst(15);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_permutation(8, inst);
    Rng rng(1000 + trial);
    const auto r = run_ga(p, GaConfig{}, rng);
    EXPECT_GE(r.best_distance, bfs_unsigned_distance(p));
    EXPECT_TRUE(apply_sequence(p, std::span<const Reversal>(r.sorting_sequence)).is_identity());
    EXPECT_EQ(r.sorting_sequence.size(), r.best_distance);
    EXPECT_EQ(fitness(r.best_genome, p), r.best_distance);
  }
}

TEST(RunGa, HistoryIsMonotoneAndStagnationRuleExact) {
  Rng inst(16);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10 + inst.below(20);
    const auto p = random_permutation(n, inst);
    GaConfig c;
    c.init = trial % 2 ? InitMode::random : InitMode::heuristic;
    Rng rng(trial);
    const auto r = run_ga(p, c, rng);
    ASSERT_EQ(r.history.size(), r.generations_run + 1);
    for (std::size_t k = 1; k < r.history.size(); ++k) ASSERT_LE(r.history[k].best, r.history[k - 1].best);
    ASSERT_EQ(r.history.back().best, r.best_distance);

    // The run ends exactly `stagnation` generations after the last improvement.
    std::size_t last_improvement = 0;
    for (std::size_t k = 1; k < r.history.size(); ++k) {
      if (r.history[k].best < r.history[k - 1].best) last_improvement = k;
    }
    if (r.generations_run < c.effective_max_generations(n)) {
      ASSERT_EQ(r.generations_run, last_improvement + c.stagnation_generations);
    }
  }
}

TEST(RunGa, MaxGenerationsCapsTheRun) {
  Rng inst(17);
  const auto p = random_permutation(20, inst);
  GaConfig c;
  c.stagnation_generations = 1000;
  c.max_generations = 5;
  Rng rng(1);
  EXPECT_EQ(run_ga(p, c, rng).generations_run, 5u);
}

TEST(RunGa, DeterministicForSeedAndIndependentOfThreads) {
  Rng inst(18);
  const auto p = random_permutation(25, inst);
  GaConfig single;
  GaConfig multi;
  multi.threads = 4;
  Rng r1(99), r2(99), r3(99);
  const auto a = run_ga(p, single, r1);
  const auto b = run_ga(p, single, r2);
  const auto c = run_ga(p, multi, r3);
  for (const auto* other : {&b, &c}) {
    EXPECT_EQ(a.best_genome, other->best_genome);
    EXPECT_EQ(a.best_distance, other->best_distance);
    EXPECT_EQ(a.sorting_sequence, other->sorting_sequence);
    EXPECT_EQ(a.generations_run, other->generations_run);
    EXPECT_TRUE(same_history(a, *other));
  }
}

TEST(DeduceUnsignedSequence, Examples) {
  GaResult identity;
  identity.best_genome = SignGenome(3, true);
  EXPECT_TRUE(deduce_unsigned_sequence(identity, UnsignedPermutation::identity(3)).empty());

  GaResult r;
  r.best_genome = {false, false};
  r.sorting_sequence = extract_optimal_sequence(SignedPermutation(U({2, 1}), r.best_genome));
  r.best_distance = r.sorting_sequence.size();
  EXPECT_EQ(deduce_unsigned_sequence(r, U({2, 1})), (SortingSequence{{1, 3}}));
}

TEST(DeduceUnsignedSequence, ReplayFailureIsLoud) {
  GaResult r;
  r.best_genome = {true, true, true};
  r.sorting_sequence = {{1, 2}};
  r.best_distance = 1;
  EXPECT_THROW(deduce_unsigned_sequence(r, U({2, 1, 3})), ReplayFailure);
  r.sorting_sequence = {{1, 3}};
  r.best_distance = 2;
  EXPECT_THROW(deduce_unsigned_sequence(r, U({2, 1, 3})), ReplayFailure);
}

TEST(DeduceUnsignedSequence, AnyEmbeddingYieldsAValidSort) {
  // Every member of Signed(p) gives a sequence that also sorts p.
  Rng rng(19);
  for (std::size_t n : {10u, 20u, 30u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = random_permutation(n, rng);
      SignGenome g(n);
      for (std::size_t k = 0; k < n; ++k) g[k] = rng.below(2) == 1;
      GaResult r;
      r.best_genome = g;
      r.sorting_sequence = extract_optimal_sequence(SignedPermutation(p, g));
      r.best_distance = r.sorting_sequence.size();
      EXPECT_NO_THROW(deduce_unsigned_sequence(r, p));
    }
  }
}
