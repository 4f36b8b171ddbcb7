#include "revga/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "revga/oracles.hpp"

namespace revga {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto at = line.find(sep, start);
    out.emplace_back(line.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::size_t method_distance(Method method, const UnsignedPermutation& p, const GaConfig& ga, Rng& rng,
                            std::optional<std::size_t>& generations) {
  switch (method) {
    case Method::ga: {
      const GaResult r = run_ga(p, ga, rng);
      generations = r.generations_run;
      return r.best_distance;
    }
    case Method::trivial:
      return trivial_sort(p).size();
    case Method::greedy:
      return greedy_breakpoint_sort(p).size();
    case Method::exact:
      return exhaustive_embedding_min(p).first;
  }
  return 0;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ga: return "ga";
    case Method::trivial: return "trivial";
    case Method::greedy: return "greedy";
    case Method::exact: return "exact";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::ga, Method::trivial, Method::greedy, Method::exact}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const {
  if (sizes.empty()) throw std::invalid_argument("experiment needs at least one size");
  if (methods.empty()) throw std::invalid_argument("experiment needs at least one method");
  if (runs_per_size < 1) throw std::invalid_argument("runs per size must be at least 1");
  for (std::size_t n : sizes) {
    if (n < 1) throw std::invalid_argument("sizes must be positive");
    for (Method m : methods) {
      if (m == Method::exact && n > kMaxEmbeddingEnumeration) {
        throw SizeTooLarge("exact method supports n <= " + std::to_string(kMaxEmbeddingEnumeration) +
                           ", got " + std::to_string(n));
      }
    }
  }
  ga.validate();
}

std::uint64_t instance_seed(std::uint64_t master, std::size_t n, std::size_t run) {
  return master ^ mix64((static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(run));
}

UnsignedPermutation experiment_instance(std::uint64_t master, std::size_t n, std::size_t run) {
  Rng rng(instance_seed(master, n, run));
  return random_permutation(n, rng);
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  struct Task {
    std::size_t n;
    std::size_t run;
  };
  std::vector<Task> tasks;
  for (std::size_t n : spec.sizes) {
    for (std::size_t run = 0; run < spec.runs_per_size; ++run) tasks.push_back({n, run});
  }

  const std::size_t per_task = spec.methods.size();
  std::vector<ExperimentRow> rows(tasks.size() * per_task);
  auto execute = [&](std::size_t t) {
    const auto [n, run] = tasks[t];
    const std::uint64_t seed = instance_seed(spec.seed, n, run);
    Rng instance_rng(seed);
    const UnsignedPermutation p = random_permutation(n, instance_rng);
    for (std::size_t m = 0; m < per_task; ++m) {
      Rng method_rng = instance_rng.fork(m + 1);
      ExperimentRow& row = rows[t * per_task + m];
      row.n = n;
      row.run = run;
      row.method = spec.methods[m];
      const auto start = std::chrono::steady_clock::now();
      row.distance = method_distance(row.method, p, spec.ga, method_rng, row.generations);
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(spec.threads, 1, tasks.size());
  if (workers == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) execute(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) execute(t);
      });
    }
  }
  return rows;
}

std::optional<double> mean_distance(const std::vector<ExperimentRow>& rows, std::size_t n, Method method) {
  std::size_t count = 0;
  std::size_t total = 0;
  for (const auto& r : rows) {
    if (r.n == n && r.method == method) {
      ++count;
      total += r.distance;
    }
  }
  if (count == 0) return std::nullopt;
  return static_cast<double>(total) / static_cast<double>(count);
}

void write_csv(std::ostream& os, const ExperimentSpec& spec, const std::vector<ExperimentRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << r.run << ',' << to_string(r.method) << ',' << r.distance << ',';
    if (r.generations) os << *r.generations;
    os << ',' << std::fixed << std::setprecision(3) << r.wall_ms << '\n';
  }
  os << "# mean distance per size\n# n";
  for (Method m : spec.methods) os << ',' << to_string(m);
  os << '\n';
  for (std::size_t n : spec.sizes) {
    os << "# " << n;
    for (Method m : spec.methods) {
      os << ',';
      if (auto mean = mean_distance(rows, n, m)) os << std::fixed << std::setprecision(2) << *mean;
    }
    os << '\n';
  }
  os << "# seed=" << spec.seed << '\n';
}

std::vector<ExperimentRow> read_csv(std::istream& is) {
  std::vector<ExperimentRow> rows;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 6) throw ParseError("line " + std::to_string(line_no) + ": expected 6 fields");
    try {
      ExperimentRow r;
      r.n = std::stoul(fields[0]);
      r.run = std::stoul(fields[1]);
      r.method = parse_method(fields[2]);
      r.distance = std::stoul(fields[3]);
      if (!fields[4].empty()) r.generations = std::stoul(fields[4]);
      r.wall_ms = std::stod(fields[5]);
      rows.push_back(r);
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!header_seen) throw ParseError("missing CSV header");
  return rows;
}

}  // namespace revga
