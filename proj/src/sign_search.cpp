#include "revga/sign_search.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "revga/hp_distance.hpp"

namespace revga {

namespace {

class FitnessCache {
 public:
  FitnessCache(const UnsignedPermutation& p, std::size_t threads) : p_(p), threads_(std::max<std::size_t>(1, threads)) {}

  std::vector<std::size_t> evaluate(const std::vector<SignGenome>& population) {
    std::vector<const SignGenome*> pending;
    for (const auto& g : population) {
      if (!known_.contains(g)) {
        known_.emplace(g, 0);
        pending.push_back(&g);
      }
    }
    std::vector<std::size_t> computed(pending.size());
    auto work = [&](std::size_t first, std::size_t stride) {
      for (std::size_t k = first; k < pending.size(); k += stride) computed[k] = fitness(*pending[k], p_);
    };
    if (threads_ == 1 || pending.size() < 2 * threads_) {
      work(0, 1);
    } else {
      std::vector<std::jthread> workers;
      for (std::size_t t = 0; t < threads_; ++t) workers.emplace_back(work, t, threads_);
    }
    for (std::size_t k = 0; k < pending.size(); ++k) known_[*pending[k]] = computed[k];

    std::vector<std::size_t> out;
    out.reserve(population.size());
    for (const auto& g : population) out.push_back(known_.at(g));
    return out;
  }

 private:
  const UnsignedPermutation& p_;
  std::size_t threads_;
  std::unordered_map<SignGenome, std::size_t> known_;
};

double mean_of(const std::vector<std::size_t>& values) {
  return static_cast<double>(std::accumulate(values.begin(), values.end(), std::size_t{0})) /
         static_cast<double>(values.size());
}

}  // namespace

void GaConfig::validate() const {
  auto is_probability = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!is_probability(crossover_rate)) throw std::invalid_argument("crossover rate must lie in [0, 1]");
  if (!is_probability(mutation_rate)) throw std::invalid_argument("mutation rate must lie in [0, 1]");
  if (population_size == 1) throw std::invalid_argument("population size must be at least 2");
  if (population_cap < 2) throw std::invalid_argument("population cap must be at least 2");
  if (stagnation_generations < 1) throw std::invalid_argument("stagnation generations must be at least 1");
}

std::size_t GaConfig::effective_population(std::size_t n) const {
  if (population_size != 0) return population_size;
  return std::clamp<std::size_t>(n * n, 2, population_cap);
}

std::size_t GaConfig::effective_max_generations(std::size_t n) const {
  return max_generations != 0 ? max_generations : 10 * n;
}

std::vector<SignGenome> heuristic_initialize(const UnsignedPermutation& p, const GaConfig& config, Rng& rng) {
  const std::size_t n = p.size();
  // fixed[k]: 0 free, 1 forced positive, 2 forced negative
  std::vector<int> fixed(n, 0);
  if (config.init == InitMode::heuristic) {
    for (const Strip& s : find_strips(p)) {
      if (s.direction == StripDirection::singleton) continue;
      const int tag = s.direction == StripDirection::ascending ? 1 : 2;
      for (int k = s.start; k <= s.end; ++k) fixed[k - 1] = tag;
    }
  }
  std::vector<SignGenome> population(config.effective_population(n), SignGenome(n));
  for (auto& g : population) {
    for (std::size_t k = 0; k < n; ++k) g[k] = fixed[k] == 0 ? rng.below(2) == 1 : fixed[k] == 1;
  }
  return population;
}

std::size_t fitness(const SignGenome& genome, const UnsignedPermutation& p) {
  return signed_distance(SignedPermutation(p, genome)).d;
}

RankSelector::RankSelector(const std::vector<std::size_t>& fitnesses)
    : order_(fitnesses.size()), cumulative_(fitnesses.size()), weight_of_(fitnesses.size()) {
  if (fitnesses.empty()) throw std::invalid_argument("cannot select from an empty population");
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return fitnesses[a] < fitnesses[b]; });
  const std::size_t size = order_.size();
  std::uint64_t running = 0;
  for (std::size_t r = 0; r < size; ++r) {
    const std::uint64_t w = size - r;
    weight_of_[order_[r]] = w;
    running += w;
    cumulative_[r] = running;
  }
}

std::size_t RankSelector::draw(Rng& rng) const {
  const std::uint64_t u = rng.below(cumulative_.back());
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return order_[static_cast<std::size_t>(it - cumulative_.begin())];
}

double RankSelector::probability(std::size_t k) const {
  return static_cast<double>(weight_of_.at(k)) / static_cast<double>(cumulative_.back());
}

std::pair<SignGenome, SignGenome> select_parents(const std::vector<SignGenome>& population,
                                                 const std::vector<std::size_t>& fitnesses, Rng& rng) {
  if (population.size() != fitnesses.size()) throw std::invalid_argument("population and fitness sizes differ");
  const RankSelector selector(fitnesses);
  const std::size_t a = selector.draw(rng);
  const std::size_t b = selector.draw(rng);
  return {population[a], population[b]};
}

std::pair<SignGenome, SignGenome> crossover(const SignGenome& a, const SignGenome& b, double rate, Rng& rng) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover parents differ in length");
  std::pair<SignGenome, SignGenome> children{a, b};
  if (a.size() < 2 || !rng.bernoulli(rate)) return children;
  const std::size_t cut = 1 + rng.below(a.size() - 1);
  for (std::size_t k = cut; k < a.size(); ++k) {
    children.first[k] = b[k];
    children.second[k] = a[k];
  }
  return children;
}

SignGenome mutate(SignGenome g, double rate, Rng& rng, MutationMode mode) {
  if (g.empty()) return g;
  if (mode == MutationMode::per_individual) {
    if (rng.bernoulli(rate)) {
      const auto k = rng.below(g.size());
      g[k] = !g[k];
    }
  } else {
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (rng.bernoulli(rate)) g[k] = !g[k];
    }
  }
  return g;
}

GaResult run_ga(const UnsignedPermutation& p, const GaConfig& config, Rng& rng) {
  config.validate();
  const std::size_t n = p.size();
  const std::size_t pop_size = config.effective_population(n);
  const std::size_t max_gens = config.effective_max_generations(n);
  const std::size_t elites = std::min(config.elitism, pop_size);

  FitnessCache cache(p, config.threads);
  std::vector<SignGenome> population = heuristic_initialize(p, config, rng);
  std::vector<std::size_t> fit = cache.evaluate(population);

  GaResult result;
  auto best_it = std::min_element(fit.begin(), fit.end());
  result.best_distance = *best_it;
  result.best_genome = population[static_cast<std::size_t>(best_it - fit.begin())];
  result.history.push_back({result.best_distance, mean_of(fit)});

  std::size_t unchanged = 0;
  while (unchanged < config.stagnation_generations && result.generations_run < max_gens) {
    const RankSelector selector(fit);
    std::vector<std::size_t> order(pop_size);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fit[a] < fit[b]; });

    std::vector<SignGenome> next;
    next.reserve(pop_size);
    for (std::size_t e = 0; e < elites; ++e) next.push_back(population[order[e]]);
    while (next.size() < pop_size) {
      const SignGenome& a = population[selector.draw(rng)];
      const SignGenome& b = population[selector.draw(rng)];
      auto [c1, c2] = crossover(a, b, config.crossover_rate, rng);
      next.push_back(mutate(std::move(c1), config.mutation_rate, rng, config.mutation_mode));
      if (next.size() < pop_size) {
        next.push_back(mutate(std::move(c2), config.mutation_rate, rng, config.mutation_mode));
      }
    }
    population = std::move(next);
    fit = cache.evaluate(population);
    ++result.generations_run;

    best_it = std::min_element(fit.begin(), fit.end());
    if (*best_it < result.best_distance) {
      result.best_distance = *best_it;
      result.best_genome = population[static_cast<std::size_t>(best_it - fit.begin())];
      unchanged = 0;
    } else {
      ++unchanged;
    }
    result.history.push_back({result.best_distance, mean_of(fit)});
  }

  result.sorting_sequence = extract_optimal_sequence(SignedPermutation(p, result.best_genome));
  deduce_unsigned_sequence(result, p);
  return result;
}

SortingSequence deduce_unsigned_sequence(const GaResult& result, const UnsignedPermutation& p) {
  const UnsignedPermutation end = apply_sequence(p, std::span<const Reversal>(result.sorting_sequence));
  if (!end.is_identity()) {
    throw ReplayFailure("sequence does not sort " + to_string(p) + ", ends at " + to_string(end));
  }
  if (result.sorting_sequence.size() != result.best_distance) {
    throw ReplayFailure("sequence length " + std::to_string(result.sorting_sequence.size()) +
                        " differs from reported distance " + std::to_string(result.best_distance));
  }
  return result.sorting_sequence;
}

}  // namespace revga
