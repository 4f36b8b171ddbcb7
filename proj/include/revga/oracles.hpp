#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "revga/permutation.hpp"

namespace revga {

struct SizeTooLarge : std::length_error {
  using std::length_error::length_error;
};

inline constexpr std::size_t kMaxSignedBfs = 7;
inline constexpr std::size_t kMaxUnsignedBfs = 9;
inline constexpr std::size_t kMaxEmbeddingEnumeration = 16;

enum class TableKind : std::uint8_t { unsigned_reversal = 0, signed_reversal = 1 };

/// Exact distance from every permutation of one size to the identity.
///
/// States are indexed densely: the Lehmer rank of the magnitudes, and for
/// signed tables rank * 2^n + sign mask (bit k set when element k is
/// negative).
class DistanceTable {
 public:
  DistanceTable(TableKind kind, std::size_t n, std::vector<std::uint8_t> distances);

  TableKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t state_count() const noexcept { return distances_.size(); }
  const std::vector<std::uint8_t>& distances() const noexcept { return distances_; }

  std::uint8_t at_index(std::size_t index) const { return distances_.at(index); }
  std::size_t distance(const UnsignedPermutation& p) const;
  std::size_t distance(const SignedPermutation& p) const;

  std::size_t index_of(const UnsignedPermutation& p) const;
  std::size_t index_of(const SignedPermutation& p) const;
  /// Permutation stored at `index`; signed tables encode signs as negatives.
  std::vector<int> state_at(std::size_t index) const;

 private:
  TableKind kind_;
  std::size_t n_;
  std::vector<std::uint8_t> distances_;
};

std::uint64_t factorial(std::size_t n);
std::uint64_t permutation_rank(std::span<const int> magnitudes);
std::vector<int> permutation_unrank(std::uint64_t rank, std::size_t n);

/// Breadth-first search from +1..+n over all reversals (i, j). n <= 7.
DistanceTable bfs_signed_distances(std::size_t n);

/// Breadth-first search from 1..n over all reversals. n <= 9.
DistanceTable bfs_unsigned_distances(std::size_t n);

/// Exact unsigned distance of one permutation. Builds (and memoizes per
/// size, process-wide) the full table.
std::size_t bfs_unsigned_distance(const UnsignedPermutation& p);

/// Minimum signed distance over all 2^n sign assignments and the first
/// minimizing assignment (true = positive), enumerated in mask order. n <= 16.
std::pair<std::size_t, std::vector<bool>> exhaustive_embedding_min(const UnsignedPermutation& p);

/// Places value k at position k for k = 1..n-1, one reversal each when needed.
SortingSequence trivial_sort(const UnsignedPermutation& p);

/// Breakpoint-greedy baseline: take a reversal that removes two breakpoints
/// if one exists, else one that removes one (preferring results that keep a
/// descending strip), else reverse an ascending strip.
SortingSequence greedy_breakpoint_sort(const UnsignedPermutation& p);

}  // namespace revga
