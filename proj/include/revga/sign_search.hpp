#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "revga/permutation.hpp"
#include "revga/rng.hpp"

namespace revga {

/// One sign per element; true is positive. Paired with an unsigned
/// permutation of the same size it picks one of its 2^n signed versions.
using SignGenome = std::vector<bool>;

struct ReplayFailure : std::logic_error {
  using std::logic_error::logic_error;
};

enum class InitMode { heuristic, random };
enum class MutationMode { per_individual, per_bit };

struct GaConfig {
  /// 0 selects n^2 (at least 2), bounded by population_cap.
  std::size_t population_size = 0;
  double crossover_rate = 0.5;
  double mutation_rate = 0.3;
  std::size_t stagnation_generations = 3;
  /// 0 selects 10 * n.
  std::size_t max_generations = 0;
  std::size_t elitism = 1;
  std::size_t population_cap = 4096;
  InitMode init = InitMode::heuristic;
  MutationMode mutation_mode = MutationMode::per_individual;
  /// Worker threads for fitness evaluation; results do not depend on it.
  std::size_t threads = 1;

  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;

  std::size_t effective_population(std::size_t n) const;
  std::size_t effective_max_generations(std::size_t n) const;
};

struct GenerationStats {
  std::size_t best = 0;
  double mean = 0.0;
};

struct GaResult {
  SignGenome best_genome;
  std::size_t best_distance = 0;
  SortingSequence sorting_sequence;
  /// Generations evolved after the initial population.
  std::size_t generations_run = 0;
  /// Entry 0 is the initial population; best is the running global best.
  std::vector<GenerationStats> history;
};

/// Population seeded from the strips of `p`: positions in an ascending strip
/// of length >= 2 are positive, in a descending one negative, singletons get
/// a fair coin. InitMode::random flips a coin for every position.
std::vector<SignGenome> heuristic_initialize(const UnsignedPermutation& p, const GaConfig& config, Rng& rng);

/// Signed reversal distance of the embedding (p, genome). Lower is fitter.
std::size_t fitness(const SignGenome& genome, const UnsignedPermutation& p);

/// Linear rank selection over a fitness vector. Rank 1 (best) gets weight N,
/// the worst gets 1; ties are ranked by population index.
class RankSelector {
 public:
  explicit RankSelector(const std::vector<std::size_t>& fitnesses);

  std::size_t draw(Rng& rng) const;
  /// Probability that index `k` is drawn.
  double probability(std::size_t k) const;

 private:
  std::vector<std::size_t> order_;       // population indices, best first
  std::vector<std::uint64_t> cumulative_;  // cumulative rank weights along order_
  std::vector<std::uint64_t> weight_of_;   // by population index
};

std::pair<SignGenome, SignGenome> select_parents(const std::vector<SignGenome>& population,
                                                 const std::vector<std::size_t>& fitnesses, Rng& rng);

/// Single-point crossover with probability `rate`: cut t uniform in 1..n-1,
/// suffixes exchanged. With n = 1 the parents pass through.
std::pair<SignGenome, SignGenome> crossover(const SignGenome& a, const SignGenome& b, double rate, Rng& rng);

/// Per individual: with probability `rate` flip one uniformly chosen bit.
/// Per bit: flip each bit independently with probability `rate`.
SignGenome mutate(SignGenome g, double rate, Rng& rng, MutationMode mode = MutationMode::per_individual);

GaResult run_ga(const UnsignedPermutation& p, const GaConfig& config, Rng& rng);

/// Replays the best embedding's reversals on the unsigned input; throws
/// ReplayFailure unless it ends at the identity.
SortingSequence deduce_unsigned_sequence(const GaResult& result, const UnsignedPermutation& p);

}  // namespace revga
