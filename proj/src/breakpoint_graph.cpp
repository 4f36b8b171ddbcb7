#include "revga/breakpoint_graph.hpp"

#include <algorithm>
#include <ostream>

namespace revga {

BreakpointGraph::BreakpointGraph(const SignedPermutation& p) : n_(p.size()) {
  const int n = static_cast<int>(n_);
  points_.reserve(2 * n_ + 2);
  points_.push_back(0);
  for (std::size_t k = 0; k < n_; ++k) {
    const int x = p.magnitude(k);
    if (p.positive(k)) {
      points_.push_back(2 * x - 1);
      points_.push_back(2 * x);
    } else {
      points_.push_back(2 * x);
      points_.push_back(2 * x - 1);
    }
  }
  points_.push_back(2 * n + 1);

  position_of_.assign(points_.size(), 0);
  for (std::size_t q = 0; q < points_.size(); ++q) position_of_[points_[q]] = static_cast<int>(q);

  cycle_of_.assign(points_.size(), -1);
  for (int start = 0; start < static_cast<int>(points_.size()); ++start) {
    if (cycle_of_[start] >= 0) continue;
    const int id = static_cast<int>(cycles_.size());
    auto& cycle = cycles_.emplace_back();
    int q = start;
    do {
      const int b = black_partner(q);
      cycle_of_[q] = cycle_of_[b] = id;
      cycle.push_back(points_[q]);
      cycle.push_back(points_[b]);
      q = gray_partner(b);
    } while (q != start);
  }
}

std::vector<std::pair<int, int>> BreakpointGraph::black_edges() const {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t k = 0; k <= n_; ++k) edges.emplace_back(2 * k, 2 * k + 1);
  return edges;
}

std::vector<std::pair<int, int>> BreakpointGraph::gray_edges() const {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t k = 0; k <= n_; ++k) {
    const int a = position_of_[2 * k];
    const int b = position_of_[2 * k + 1];
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  return edges;
}

void BreakpointGraph::dump(std::ostream& os) const {
  for (const auto& cycle : cycles_) {
    for (std::size_t k = 0; k < cycle.size(); ++k) os << (k ? " " : "") << cycle[k];
    os << '\n';
  }
}

std::size_t padded_breakpoint_count(std::span<const int> padded) {
  std::size_t count = 0;
  for (std::size_t k = 0; k + 1 < padded.size(); ++k) {
    const int d = padded[k + 1] - padded[k];
    if (d != 1 && d != -1) ++count;
  }
  return count;
}

std::size_t breakpoint_count(const UnsignedPermutation& p) {
  std::vector<int> padded;
  padded.reserve(p.size() + 2);
  padded.push_back(0);
  padded.insert(padded.end(), p.elements().begin(), p.elements().end());
  padded.push_back(static_cast<int>(p.size()) + 1);
  return padded_breakpoint_count(padded);
}

}  // namespace revga
