#include "revga/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "revga/experiment.hpp"
#include "revga/hp_distance.hpp"
#include "revga/oracle_cache.hpp"
#include "revga/oracles.hpp"
#include "revga/sign_search.hpp"

namespace revga {

namespace {

struct VerificationMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::vector<std::string> positional;
  std::string file;
};

struct GaOptions {
  std::string init = "heuristic";
  std::size_t population = 0;
  double crossover_rate = 0.5;
  double mutation_rate = 0.3;
  std::size_t stagnation = 3;
  std::size_t max_generations = 0;
  bool per_bit_mutation = false;

  GaConfig config() const {
    GaConfig c;
    c.population_size = population;
    c.crossover_rate = crossover_rate;
    c.mutation_rate = mutation_rate;
    c.stagnation_generations = stagnation;
    c.max_generations = max_generations;
    c.init = init == "random" ? InitMode::random : InitMode::heuristic;
    c.mutation_mode = per_bit_mutation ? MutationMode::per_bit : MutationMode::per_individual;
    c.threads = std::max(1u, std::thread::hardware_concurrency());
    c.validate();
    return c;
  }
};

void add_input_options(CLI::App* app, InputOptions& in) {
  app->add_option("permutation", in.positional, "Permutation, e.g. '+4 -1 +3 -2' or 4 1 3 2");
  app->add_option("--file", in.file, "File with one permutation per line");
}

void add_ga_options(CLI::App* app, GaOptions& ga) {
  app->add_option("--init", ga.init, "Initial population: heuristic or random")
      ->check(CLI::IsMember({"heuristic", "random"}));
  app->add_option("--pop", ga.population, "Population size (0 = n^2)");
  app->add_option("--cx-rate", ga.crossover_rate, "Crossover probability")->check(CLI::Range(0.0, 1.0));
  app->add_option("--mut-rate", ga.mutation_rate, "Mutation probability")->check(CLI::Range(0.0, 1.0));
  app->add_option("--stagnation", ga.stagnation, "Generations without improvement before stopping")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-gens", ga.max_generations, "Generation cap (0 = 10n)");
  app->add_flag("--per-bit-mutation", ga.per_bit_mutation, "Flip every bit with the mutation rate");
}

std::vector<ParsedPermutation> read_inputs(const InputOptions& in) {
  std::vector<ParsedPermutation> out;
  if (!in.file.empty()) {
    std::ifstream f(in.file);
    if (!f) throw std::runtime_error("cannot open " + in.file);
    std::string line;
    while (std::getline(f, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
      out.push_back(parse_permutation(line));
    }
  }
  if (!in.positional.empty()) {
    std::string joined;
    for (const auto& s : in.positional) joined += s + " ";
    out.push_back(parse_permutation(joined));
  }
  if (out.empty()) throw ParseError("no permutation given");
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
  if (seed) return *seed;
  std::random_device device;
  const std::uint64_t drawn = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  err << "seed=" << drawn << '\n';
  return drawn;
}

std::string genome_string(const SignGenome& g) {
  std::string s;
  for (bool b : g) s += b ? '+' : '-';
  return s;
}

int cmd_distance(const InputOptions& in, const GaOptions& ga, bool exact, bool verbose,
                 const std::optional<std::uint64_t>& seed_opt, std::ostream& out, std::ostream& err) {
  const auto inputs = read_inputs(in);
  std::optional<Rng> rng;
  for (const auto& parsed : inputs) {
    if (parsed.is_signed) {
      out << to_string(signed_distance(parsed.as_signed())) << '\n';
      continue;
    }
    const UnsignedPermutation p = parsed.as_unsigned();
    if (exact) {
      const auto [d, genome] = exhaustive_embedding_min(p);
      out << "d=" << d;
      if (verbose) out << " method=exact genome=" << genome_string(genome);
      out << '\n';
      continue;
    }
    if (!rng) rng.emplace(resolve_seed(seed_opt, err));
    const GaResult r = run_ga(p, ga.config(), *rng);
    out << "d=" << r.best_distance;
    if (verbose) {
      out << " method=ga generations=" << r.generations_run << " genome=" << genome_string(r.best_genome) << ' '
          << to_string(signed_distance(SignedPermutation(p, r.best_genome)));
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_sort(const InputOptions& in, const GaOptions& ga, bool exact, bool verify,
             const std::optional<std::uint64_t>& seed_opt, std::ostream& out, std::ostream& err) {
  const auto inputs = read_inputs(in);
  std::optional<Rng> rng;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const auto& parsed = inputs[k];
    if (inputs.size() > 1) out << (k ? "\n" : "") << "# " << (parsed.is_signed ? to_string(parsed.as_signed()) : to_string(parsed.as_unsigned())) << '\n';
    SortingSequence seq;
    if (parsed.is_signed) {
      seq = extract_optimal_sequence(parsed.as_signed());
    } else {
      const UnsignedPermutation p = parsed.as_unsigned();
      if (exact) {
        const auto [d, genome] = exhaustive_embedding_min(p);
        seq = extract_optimal_sequence(SignedPermutation(p, genome));
      } else {
        if (!rng) rng.emplace(resolve_seed(seed_opt, err));
        seq = run_ga(p, ga.config(), *rng).sorting_sequence;
      }
    }
    for (const Reversal& r : seq) out << to_string(r) << '\n';
    if (verify) {
      const bool sorted = parsed.is_signed ? apply_sequence(parsed.as_signed(), seq).is_identity()
                                           : apply_sequence(parsed.as_unsigned(), seq).is_identity();
      if (!sorted) throw VerificationMismatch("replay did not reach the identity");
      err << "verified: " << seq.size() << " reversals\n";
    }
  }
  return kExitOk;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const unsigned long v = std::stoul(item, &used);
    if (used != item.size() || v == 0) throw ParseError("bad size '" + item + "'");
    sizes.push_back(v);
  }
  if (sizes.empty()) throw ParseError("no sizes given");
  return sizes;
}

int cmd_experiment(const std::string& sizes, std::size_t runs, const std::string& methods, const std::string& out_path,
                   const GaOptions& ga, std::size_t threads, const std::optional<std::uint64_t>& seed_opt,
                   std::ostream& out, std::ostream& err) {
  ExperimentSpec spec;
  spec.sizes = parse_sizes(sizes);
  spec.runs_per_size = runs;
  spec.methods.clear();
  std::stringstream ms(methods);
  std::string m;
  while (std::getline(ms, m, ',')) {
    if (!m.empty()) spec.methods.push_back(parse_method(m));
  }
  spec.ga = ga.config();
  spec.ga.threads = 1;
  spec.threads = threads;
  spec.seed = resolve_seed(seed_opt, err);
  spec.output_path = out_path;
  const auto rows = run_experiment(spec);

  if (out_path.empty() || out_path == "-") {
    write_csv(out, spec, rows);
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open " + out_path + " for writing");
    write_csv(f, spec, rows);
    if (!f) throw std::runtime_error("write failed: " + out_path);
    err << "wrote " << rows.size() << " rows to " << out_path << '\n';
  }
  return kExitOk;
}

struct CheckCounts {
  std::size_t ok = 0;
  std::size_t total = 0;
};

void report(std::ostream& out, const std::string& label, const CheckCounts& c) {
  out << label << ": " << c.ok << '/' << c.total << " ok\n";
}

CheckCounts check_signed(std::size_t n, std::size_t samples, Rng& rng, const std::string& cache_dir,
                         std::ostream& err) {
  if (n > kMaxSignedBfs) {
    throw SizeTooLarge("signed BFS oracle supports n <= " + std::to_string(kMaxSignedBfs) + ", got " +
                       std::to_string(n));
  }
  const DistanceTable table =
      cache_dir.empty() ? bfs_signed_distances(n) : load_or_build(cache_dir, TableKind::signed_reversal, n);
  CheckCounts c;
  auto check = [&](const SignedPermutation& p) {
    ++c.total;
    const std::size_t expected = table.distance(p);
    const auto got = signed_distance(p);
    if (got.d == expected) {
      ++c.ok;
    } else {
      err << "mismatch: " << to_string(p) << " hp " << to_string(got) << " bfs d=" << expected << '\n';
    }
  };
  if (samples == 0) {
    for (std::size_t index = 0; index < table.state_count(); ++index) check(SignedPermutation(table.state_at(index)));
  } else {
    for (std::size_t s = 0; s < samples; ++s) check(random_signed_permutation(n, rng));
  }
  return c;
}

CheckCounts check_embedding(std::size_t n, std::size_t samples, Rng& rng, const std::string& cache_dir,
                            std::ostream& err) {
  if (n > kMaxUnsignedBfs) {
    throw SizeTooLarge("unsigned BFS oracle supports n <= " + std::to_string(kMaxUnsignedBfs) + ", got " +
                       std::to_string(n));
  }
  const DistanceTable table =
      cache_dir.empty() ? bfs_unsigned_distances(n) : load_or_build(cache_dir, TableKind::unsigned_reversal, n);
  CheckCounts c;
  auto check = [&](const UnsignedPermutation& p) {
    ++c.total;
    const std::size_t expected = table.distance(p);
    const std::size_t got = exhaustive_embedding_min(p).first;
    if (got == expected) {
      ++c.ok;
    } else {
      err << "mismatch: " << to_string(p) << " embedding-min d=" << got << " bfs d=" << expected << '\n';
    }
  };
  if (samples == 0) {
    for (std::size_t index = 0; index < table.state_count(); ++index) check(UnsignedPermutation(table.state_at(index)));
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      std::vector<int> v = permutation_unrank(rng.below(factorial(n)), n);
      check(UnsignedPermutation(std::move(v)));
    }
  }
  return c;
}

int cmd_oracle_check(const std::string& kind, std::optional<std::size_t> n, std::optional<std::size_t> samples,
                     const std::string& cache_dir, const std::optional<std::uint64_t>& seed_opt, std::ostream& out,
                     std::ostream& err) {
  Rng rng(resolve_seed(seed_opt, err));
  bool all_ok = true;
  auto run_signed = [&](std::size_t size, std::size_t count) {
    const auto c = check_signed(size, count, rng, cache_dir, err);
    report(out, "signed n=" + std::to_string(size) + (count ? " sampled" : " exhaustive"), c);
    all_ok = all_ok && c.ok == c.total;
  };
  auto run_embedding = [&](std::size_t size, std::size_t count) {
    const auto c = check_embedding(size, count, rng, cache_dir, err);
    report(out, "embedding n=" + std::to_string(size) + (count ? " sampled" : " exhaustive"), c);
    all_ok = all_ok && c.ok == c.total;
  };

  if (kind == "signed" || kind == "all") {
    if (n) {
      run_signed(*n, samples.value_or(0));
    } else {
      run_signed(5, 0);
      run_signed(7, samples.value_or(1000));
    }
  }
  if (kind == "embedding" || kind == "all") run_embedding(n.value_or(8), samples.value_or(200));
  return all_ok ? kExitOk : kExitMismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reversal distance toolkit: exact signed distance and GA search over sign embeddings", "revga"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  bool exact = false;
  bool verify = false;
  bool verbose = false;
  InputOptions in;
  GaOptions ga;

  auto* distance = app.add_subcommand("distance", "Reversal distance of a permutation");
  add_input_options(distance, in);
  add_ga_options(distance, ga);
  distance->add_flag("--exact", exact, "Exact unsigned distance by enumerating all sign embeddings");
  distance->add_flag("--verbose", verbose, "Print distance breakdown and GA details");
  distance->add_option("--seed", seed, "Seed for the GA");

  auto* sort = app.add_subcommand("sort", "Print a sorting sequence, one 'i j' reversal per line");
  add_input_options(sort, in);
  add_ga_options(sort, ga);
  sort->add_flag("--exact", exact, "Optimal sequence via the best sign embedding");
  sort->add_flag("--verify", verify, "Replay the sequence and check it reaches the identity");
  sort->add_option("--seed", seed, "Seed for the GA");

  std::string sizes = "10,20,30,40,50";
  std::size_t runs = 10;
  std::string methods = "ga,trivial,greedy";
  std::string out_path;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  auto* experiment = app.add_subcommand("experiment", "Compare methods on random permutations, CSV output");
  experiment->add_option("--sizes", sizes, "Comma-separated permutation sizes");
  experiment->add_option("--runs", runs, "Runs per size")->check(CLI::PositiveNumber);
  experiment->add_option("--methods", methods, "Comma-separated subset of ga,trivial,greedy,exact");
  experiment->add_option("--out", out_path, "CSV output path (default stdout)");
  experiment->add_option("--threads", threads, "Instances evaluated concurrently");
  experiment->add_option("--seed", seed, "Master seed");
  add_ga_options(experiment, ga);

  std::string kind = "all";
  std::optional<std::size_t> check_n;
  std::optional<std::size_t> samples;
  std::string cache_dir;
  auto* oracle = app.add_subcommand("oracle-check", "Cross-check exact distances against breadth-first search");
  oracle->add_option("--kind", kind, "signed, embedding or all")->check(CLI::IsMember({"signed", "embedding", "all"}));
  oracle->add_option("--n", check_n, "Permutation size");
  oracle->add_option("--samples", samples, "Random cases (0 = every permutation)");
  oracle->add_option("--cache-dir", cache_dir, "Directory for cached BFS tables");
  oracle->add_option("--seed", seed, "Seed for sampling");

  std::vector<const char*> argv{"revga"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (distance->parsed()) return cmd_distance(in, ga, exact, verbose, seed, out, err);
    if (sort->parsed()) return cmd_sort(in, ga, exact, verify, seed, out, err);
    if (experiment->parsed()) return cmd_experiment(sizes, runs, methods, out_path, ga, threads, seed, out, err);
    if (oracle->parsed()) return cmd_oracle_check(kind, check_n, samples, cache_dir, seed, out, err);
  } catch (const SizeTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kExitSizeCap;
  } catch (const VerificationMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const std::logic_error& e) {
    // NoImprovingReversal and ReplayFailure are verification failures.
    if (dynamic_cast<const NoImprovingReversal*>(&e) || dynamic_cast<const ReplayFailure*>(&e)) {
      err << "error: " << e.what() << '\n';
      return kExitMismatch;
    }
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace revga
