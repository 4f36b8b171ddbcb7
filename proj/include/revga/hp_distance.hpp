#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "revga/breakpoint_graph.hpp"
#include "revga/permutation.hpp"

namespace revga {

/// Thrown when no distance-reducing reversal exists for an unsorted
/// permutation. Reaching it means the distance formula is wrong.
struct NoImprovingReversal : std::logic_error {
  using std::logic_error::logic_error;
};

/// A connected component of the interleaving relation among nontrivial cycles.
struct ComponentInfo {
  std::vector<int> cycles;
  std::vector<int> positions;  // sorted point positions covered by the cycles
  bool oriented = false;
};

/// Hannenhalli-Pevzner decomposition: d = (n+1) - c + h + f.
struct DistanceBreakdown {
  std::size_t n = 0;
  std::size_t c = 0;
  std::size_t h = 0;
  std::size_t f = 0;
  std::size_t d = 0;

  friend bool operator==(const DistanceBreakdown&, const DistanceBreakdown&) = default;
};

/// Renders as "d=<d> c=<c> h=<h> f=<f>".
std::string to_string(const DistanceBreakdown& b);

/// Components of the nontrivial cycles of `g`, ordered by their smallest
/// position. Trivial cycles belong to no component.
std::vector<ComponentInfo> find_components(const BreakpointGraph& g);

/// Hurdle classification of unoriented components.
struct HurdleInfo {
  std::vector<int> hurdles;        // component indices
  std::vector<int> super_hurdles;  // subset of hurdles
  bool fortress = false;
};

HurdleInfo classify_hurdles(const BreakpointGraph& g, const std::vector<ComponentInfo>& components);

/// Exact reversal distance of a signed permutation to +1 +2 ... +n.
DistanceBreakdown signed_distance(const SignedPermutation& p);

/// (n+1) - c: the cycle bound, never above signed_distance(p).d.
std::size_t distance_lower_bound(const SignedPermutation& p);

/// Optimal sorting sequence built by repeatedly taking the lexicographically
/// smallest reversal that lowers the exact distance by one.
SortingSequence extract_optimal_sequence(const SignedPermutation& p);

}  // namespace revga
