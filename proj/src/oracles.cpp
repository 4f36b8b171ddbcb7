#include "revga/oracles.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>

#include "revga/breakpoint_graph.hpp"
#include "revga/hp_distance.hpp"

namespace revga {

namespace {

constexpr std::uint8_t kUnreached = std::numeric_limits<std::uint8_t>::max();

void require_at_most(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw SizeTooLarge(std::string(what) + " supports n <= " + std::to_string(cap) + ", got " +
                       std::to_string(n));
  }
}

std::vector<std::uint8_t> breadth_first(TableKind kind, std::size_t n) {
  const bool is_signed = kind == TableKind::signed_reversal;
  const std::uint64_t masks = is_signed ? (std::uint64_t{1} << n) : 1;
  const std::uint64_t states = factorial(n) * masks;
  std::vector<std::uint8_t> dist(states, kUnreached);

  auto encode = [&](const std::vector<int>& v) {
    std::vector<int> mag(v.size());
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      mag[k] = v[k] < 0 ? -v[k] : v[k];
      if (v[k] < 0) mask |= std::uint64_t{1} << k;
    }
    return permutation_rank(mag) * masks + mask;
  };
  auto decode = [&](std::uint64_t index) {
    std::vector<int> v = permutation_unrank(index / masks, n);
    const std::uint64_t mask = index % masks;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) v[k] = -v[k];
    }
    return v;
  };

  std::vector<std::uint64_t> frontier{0};  // identity has rank 0 and mask 0
  dist[0] = 0;
  std::uint8_t level = 0;
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t index : frontier) {
      const std::vector<int> v = decode(index);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) {
          std::vector<int> w = v;
          std::reverse(w.begin() + i, w.begin() + j);
          if (is_signed) {
            for (std::size_t k = i; k < j; ++k) w[k] = -w[k];
          }
          const std::uint64_t code = encode(w);
          if (dist[code] == kUnreached) {
            dist[code] = static_cast<std::uint8_t>(level + 1);
            next.push_back(code);
          }
        }
      }
    }
    frontier = std::move(next);
    ++level;
  }
  return dist;
}

// Breakpoint delta of reversing padded[i..j-1], 1 <= i < j <= n+1.
int breakpoints_removed(const std::vector<int>& padded, int i, int j) {
  auto is_break = [](int a, int b) { return a - b != 1 && b - a != 1; };
  const int before = is_break(padded[i - 1], padded[i]) + is_break(padded[j - 1], padded[j]);
  const int after = is_break(padded[i - 1], padded[j - 1]) + is_break(padded[i], padded[j]);
  return before - after;
}

struct PaddedStrip {
  int first;  // padded index, inclusive
  int last;
  bool decreasing;
};

// Strips of the padded sequence. Singletons count as decreasing except the
// ones holding 0 or n+1.
std::vector<PaddedStrip> padded_strips(const std::vector<int>& padded) {
  std::vector<PaddedStrip> strips;
  const int m = static_cast<int>(padded.size());
  int k = 0;
  while (k < m) {
    int end = k;
    while (end + 1 < m) {
      const int d = padded[end + 1] - padded[end];
      if (d != 1 && d != -1) break;
      if (end > k && d != padded[k + 1] - padded[k]) break;
      ++end;
    }
    bool decreasing;
    if (end == k) {
      decreasing = k != 0 && k != m - 1;
    } else {
      decreasing = padded[k + 1] < padded[k];
    }
    strips.push_back({k, end, decreasing});
    k = end + 1;
  }
  return strips;
}

bool has_decreasing_strip(const std::vector<int>& padded) {
  const auto strips = padded_strips(padded);
  return std::any_of(strips.begin(), strips.end(), [](const PaddedStrip& s) { return s.decreasing; });
}

}  // namespace

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

std::uint64_t permutation_rank(std::span<const int> magnitudes) {
  const std::size_t n = magnitudes.size();
  std::uint64_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t smaller = 0;
    for (std::size_t m = k + 1; m < n; ++m) {
      if (magnitudes[m] < magnitudes[k]) ++smaller;
    }
    rank = rank * (n - k) + smaller;
  }
  return rank;
}

std::vector<int> permutation_unrank(std::uint64_t rank, std::size_t n) {
  std::vector<std::uint64_t> digits(n);
  for (std::size_t k = n; k-- > 0;) {
    const std::uint64_t base = n - k;
    digits[k] = rank % base;
    rank /= base;
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = pool[digits[k]];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[k]));
  }
  return out;
}

DistanceTable::DistanceTable(TableKind kind, std::size_t n, std::vector<std::uint8_t> distances)
    : kind_(kind), n_(n), distances_(std::move(distances)) {
  const std::uint64_t expected =
      factorial(n) * (kind == TableKind::signed_reversal ? (std::uint64_t{1} << n) : 1);
  if (distances_.size() != expected) {
    throw std::invalid_argument("distance table holds " + std::to_string(distances_.size()) +
                                " states, expected " + std::to_string(expected));
  }
}

std::size_t DistanceTable::index_of(const UnsignedPermutation& p) const {
  if (kind_ != TableKind::unsigned_reversal || p.size() != n_) {
    throw std::invalid_argument("permutation does not match unsigned table of size " + std::to_string(n_));
  }
  return permutation_rank(p.elements());
}

std::size_t DistanceTable::index_of(const SignedPermutation& p) const {
  if (kind_ != TableKind::signed_reversal || p.size() != n_) {
    throw std::invalid_argument("permutation does not match signed table of size " + std::to_string(n_));
  }
  std::vector<int> mag(n_);
  std::uint64_t mask = 0;
  for (std::size_t k = 0; k < n_; ++k) {
    mag[k] = p.magnitude(k);
    if (!p.positive(k)) mask |= std::uint64_t{1} << k;
  }
  return permutation_rank(mag) * (std::uint64_t{1} << n_) + mask;
}

std::vector<int> DistanceTable::state_at(std::size_t index) const {
  if (kind_ == TableKind::unsigned_reversal) return permutation_unrank(index, n_);
  const std::uint64_t masks = std::uint64_t{1} << n_;
  std::vector<int> v = permutation_unrank(index / masks, n_);
  for (std::size_t k = 0; k < n_; ++k) {
    if ((index % masks) >> k & 1) v[k] = -v[k];
  }
  return v;
}

std::size_t DistanceTable::distance(const UnsignedPermutation& p) const { return distances_[index_of(p)]; }
std::size_t DistanceTable::distance(const SignedPermutation& p) const { return distances_[index_of(p)]; }

DistanceTable bfs_signed_distances(std::size_t n) {
  require_at_most(n, kMaxSignedBfs, "signed BFS oracle");
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  return DistanceTable(TableKind::signed_reversal, n, breadth_first(TableKind::signed_reversal, n));
}

DistanceTable bfs_unsigned_distances(std::size_t n) {
  require_at_most(n, kMaxUnsignedBfs, "unsigned BFS oracle");
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  return DistanceTable(TableKind::unsigned_reversal, n, breadth_first(TableKind::unsigned_reversal, n));
}

std::size_t bfs_unsigned_distance(const UnsignedPermutation& p) {
  require_at_most(p.size(), kMaxUnsignedBfs, "unsigned BFS oracle");
  static std::mutex mutex;
  static std::map<std::size_t, DistanceTable> tables;
  std::lock_guard lock(mutex);
  auto it = tables.find(p.size());
  if (it == tables.end()) it = tables.emplace(p.size(), bfs_unsigned_distances(p.size())).first;
  return it->second.distance(p);
}

std::pair<std::size_t, std::vector<bool>> exhaustive_embedding_min(const UnsignedPermutation& p) {
  const std::size_t n = p.size();
  require_at_most(n, kMaxEmbeddingEnumeration, "exhaustive embedding search");
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<bool> best_signs;
  std::vector<int> values(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t k = 0; k < n; ++k) values[k] = (mask >> k & 1) ? -p[k] : p[k];
    const std::size_t d = signed_distance(SignedPermutation(values)).d;
    if (d < best) {
      best = d;
      best_signs.assign(n, true);
      for (std::size_t k = 0; k < n; ++k) best_signs[k] = !(mask >> k & 1);
    }
  }
  return {best, best_signs};
}

SortingSequence trivial_sort(const UnsignedPermutation& p) {
  SortingSequence seq;
  UnsignedPermutation current = p;
  const int n = static_cast<int>(p.size());
  for (int k = 1; k < n; ++k) {
    const auto e = current.elements();
    const int q = static_cast<int>(std::find(e.begin(), e.end(), k) - e.begin()) + 1;
    if (q != k) {
      seq.push_back({k, q + 1});
      current = apply_reversal(current, seq.back());
    }
  }
  return seq;
}

SortingSequence greedy_breakpoint_sort(const UnsignedPermutation& p) {
  const int n = static_cast<int>(p.size());
  std::vector<int> padded{0};
  padded.insert(padded.end(), p.elements().begin(), p.elements().end());
  padded.push_back(n + 1);

  SortingSequence seq;
  std::size_t breakpoints = padded_breakpoint_count(padded);
  // Each breakpoint costs at most two steps.
  const std::size_t step_cap = 2 * breakpoints + 2;
  while (breakpoints > 0) {
    if (seq.size() > step_cap) throw std::logic_error("greedy breakpoint sort failed to converge");

    std::optional<Reversal> two, one_keeping_descent, one;
    for (int i = 1; i <= n && !two; ++i) {
      for (int j = i + 2; j <= n + 1; ++j) {
        const int removed = breakpoints_removed(padded, i, j);
        if (removed == 2) {
          two = Reversal{i, j};
          break;
        }
        if (removed == 1 && !one_keeping_descent) {
          if (!one) one = Reversal{i, j};
          std::vector<int> trial = padded;
          std::reverse(trial.begin() + i, trial.begin() + j);
          if (has_decreasing_strip(trial)) one_keeping_descent = Reversal{i, j};
        }
      }
    }

    Reversal chosen;
    if (two) {
      chosen = *two;
    } else if (one_keeping_descent) {
      chosen = *one_keeping_descent;
    } else if (one) {
      chosen = *one;
    } else {
      // No decreasing strip exists; reversing an inner ascending strip makes one.
      const auto strips = padded_strips(padded);
      auto inner = std::find_if(strips.begin(), strips.end(), [&](const PaddedStrip& s) {
        return s.first > 0 && s.last < n + 1;
      });
      if (inner == strips.end()) throw std::logic_error("greedy breakpoint sort found no inner strip");
      chosen = {inner->first, inner->last + 1};
    }
    std::reverse(padded.begin() + chosen.i, padded.begin() + chosen.j);
    seq.push_back(chosen);
    breakpoints = padded_breakpoint_count(padded);
  }
  return seq;
}

}  // namespace revga
