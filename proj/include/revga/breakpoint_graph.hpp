#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revga/permutation.hpp"

namespace revga {

/// Breakpoint graph of a signed permutation in split-node form.
///
/// Element +x becomes the point pair (2x-1, 2x), element -x becomes
/// (2x, 2x-1), and the sequence is padded with 0 in front and 2n+1 at the
/// end, giving 2n+2 points at 0-based positions 0..2n+1.
///
/// Black edges join the points at positions (2k, 2k+1): adjacencies that
/// exist in the permutation. Gray edges join the values (2k, 2k+1):
/// adjacencies that the identity requires. (Some texts draw gray edges in
/// red.) Every point has exactly one edge of each color, so the edge set
/// splits into a unique family of alternating cycles.
class BreakpointGraph {
 public:
  explicit BreakpointGraph(const SignedPermutation& p);

  std::size_t size() const noexcept { return n_; }
  std::size_t point_count() const noexcept { return points_.size(); }

  /// Value at each position.
  std::span<const int> points() const noexcept { return points_; }
  /// Position of each value.
  std::span<const int> positions() const noexcept { return position_of_; }

  /// Position sharing a black edge with `pos`.
  static constexpr int black_partner(int pos) noexcept { return pos ^ 1; }
  /// Position sharing a gray edge with `pos`.
  int gray_partner(int pos) const noexcept { return position_of_[points_[pos] ^ 1]; }

  /// Black edges as (left, right) position pairs, k = 0..n.
  std::vector<std::pair<int, int>> black_edges() const;
  /// Gray edges as (lower, higher) position pairs, ordered by value 2k.
  std::vector<std::pair<int, int>> gray_edges() const;

  /// Cycles as point lists, each starting at its smallest position and
  /// walking black edge first. Ordered by starting position.
  const std::vector<std::vector<int>>& cycles() const noexcept { return cycles_; }
  /// Cycle id for each position.
  std::span<const int> cycle_of() const noexcept { return cycle_of_; }

  std::size_t cycle_count() const noexcept { return cycles_.size(); }

  /// A cycle made of one black and one gray edge.
  bool is_trivial(std::size_t cycle) const noexcept { return cycles_[cycle].size() == 2; }

  /// One line per cycle: space-separated point values in walk order.
  void dump(std::ostream& os) const;

 private:
  std::size_t n_ = 0;
  std::vector<int> points_;
  std::vector<int> position_of_;
  std::vector<std::vector<int>> cycles_;
  std::vector<int> cycle_of_;
};

inline BreakpointGraph build_graph(const SignedPermutation& p) { return BreakpointGraph(p); }
inline std::size_t cycle_count(const BreakpointGraph& g) noexcept { return g.cycle_count(); }

/// Number of padded adjacent pairs (0 and n+1 added) whose values differ
/// by anything other than 1.
std::size_t breakpoint_count(const UnsignedPermutation& p);

/// Same count taken on a raw padded sequence 0, p..., n+1.
std::size_t padded_breakpoint_count(std::span<const int> padded);

}  // namespace revga
