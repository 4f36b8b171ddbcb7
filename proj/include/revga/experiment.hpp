#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revga/sign_search.hpp"

namespace revga {

enum class Method { ga, trivial, greedy, exact };

std::string_view to_string(Method m);
/// Throws std::invalid_argument for an unknown name.
Method parse_method(std::string_view name);

struct ExperimentSpec {
  std::vector<std::size_t> sizes{10, 20, 30, 40, 50};
  std::size_t runs_per_size = 10;
  std::vector<Method> methods{Method::ga, Method::trivial, Method::greedy};
  std::uint64_t seed = 0;
  std::filesystem::path output_path;
  GaConfig ga;
  /// Instances evaluated concurrently; output order is fixed regardless.
  std::size_t threads = 1;

  /// Throws std::invalid_argument for an empty or malformed spec and
  /// SizeTooLarge when `exact` is requested beyond the enumeration cap.
  void validate() const;
};

struct ExperimentRow {
  std::size_t n = 0;
  std::size_t run = 0;
  Method method = Method::ga;
  std::size_t distance = 0;
  std::optional<std::size_t> generations;  // GA only
  double wall_ms = 0.0;
};

inline constexpr std::string_view kCsvHeader = "n,run,method,distance,generations,wall_ms";

/// Seed of instance (n, run): master seed xor a hash of the pair.
std::uint64_t instance_seed(std::uint64_t master, std::size_t n, std::size_t run);

/// The random instance an experiment uses for (n, run).
UnsignedPermutation experiment_instance(std::uint64_t master, std::size_t n, std::size_t run);

/// Runs every (size, run, method) combination; rows come back ordered by
/// size, then run, then method in spec order.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

/// Header, one line per row, then '#'-prefixed footer lines holding the
/// per-size mean distance of each method and the master seed.
void write_csv(std::ostream& os, const ExperimentSpec& spec, const std::vector<ExperimentRow>& rows);

/// Reads back data rows, skipping comment lines. Throws ParseError.
std::vector<ExperimentRow> read_csv(std::istream& is);

/// Mean distance of `method` at size `n`; nullopt if no rows match.
std::optional<double> mean_distance(const std::vector<ExperimentRow>& rows, std::size_t n, Method method);

}  // namespace revga
