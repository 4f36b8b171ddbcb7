#include "revga/hp_distance.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace revga {

namespace {

struct DisjointSets {
  std::vector<int> parent;

  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct GrayEdge {
  int lo;
  int hi;
  int cycle;
};

// True iff `label` occupies one contiguous arc of the circular sequence.
bool contiguous_on_circle(const std::vector<int>& circle, int label) {
  const std::size_t m = circle.size();
  std::size_t entries = 0;
  for (std::size_t k = 0; k < m; ++k) {
    if (circle[k] == label && circle[(k + m - 1) % m] != label) ++entries;
  }
  return entries <= 1;
}

}  // namespace

std::string to_string(const DistanceBreakdown& b) {
  std::ostringstream os;
  os << "d=" << b.d << " c=" << b.c << " h=" << b.h << " f=" << b.f;
  return os.str();
}

std::vector<ComponentInfo> find_components(const BreakpointGraph& g) {
  const auto& cycles = g.cycles();
  const auto cycle_of = g.cycle_of();

  std::vector<GrayEdge> edges;
  for (const auto& [lo, hi] : g.gray_edges()) {
    const int c = cycle_of[lo];
    if (!g.is_trivial(static_cast<std::size_t>(c))) edges.push_back({lo, hi, c});
  }
  std::sort(edges.begin(), edges.end(), [](const GrayEdge& a, const GrayEdge& b) { return a.lo < b.lo; });

  // Two gray edges interleave iff lo1 < lo2 < hi1 < hi2; their cycles then
  // share a component.
  DisjointSets sets(cycles.size());
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size() && edges[b].lo < edges[a].hi; ++b) {
      if (edges[a].hi < edges[b].hi) sets.unite(edges[a].cycle, edges[b].cycle);
    }
  }

  std::vector<bool> cycle_oriented(cycles.size(), false);
  for (const auto& e : edges) {
    if ((e.hi - e.lo) % 2 == 0) cycle_oriented[e.cycle] = true;
  }

  std::vector<int> component_of_root(cycles.size(), -1);
  std::vector<ComponentInfo> components;
  // Cycles are ordered by smallest position, so components come out ordered too.
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (g.is_trivial(c)) continue;
    const int root = sets.find(static_cast<int>(c));
    if (component_of_root[root] < 0) {
      component_of_root[root] = static_cast<int>(components.size());
      components.emplace_back();
    }
    auto& comp = components[component_of_root[root]];
    comp.cycles.push_back(static_cast<int>(c));
    comp.oriented = comp.oriented || cycle_oriented[c];
  }
  for (std::size_t q = 0; q < g.point_count(); ++q) {
    const int c = cycle_of[q];
    if (g.is_trivial(static_cast<std::size_t>(c))) continue;
    components[component_of_root[sets.find(c)]].positions.push_back(static_cast<int>(q));
  }
  return components;
}

HurdleInfo classify_hurdles(const BreakpointGraph& g, const std::vector<ComponentInfo>& components) {
  HurdleInfo info;

  // Circular sequence of component labels over the positions held by
  // unoriented components.
  std::vector<int> label_at(g.point_count(), -1);
  std::vector<int> unoriented;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (components[k].oriented) continue;
    unoriented.push_back(static_cast<int>(k));
    for (int q : components[k].positions) label_at[q] = static_cast<int>(k);
  }
  if (unoriented.empty()) return info;

  std::vector<int> circle;
  for (int label : label_at) {
    if (label >= 0) circle.push_back(label);
  }

  std::vector<bool> is_hurdle(components.size(), false);
  for (int u : unoriented) {
    if (contiguous_on_circle(circle, u)) {
      is_hurdle[u] = true;
      info.hurdles.push_back(u);
    }
  }

  for (int hurdle : info.hurdles) {
    std::vector<int> reduced;
    reduced.reserve(circle.size());
    std::copy_if(circle.begin(), circle.end(), std::back_inserter(reduced), [&](int l) { return l != hurdle; });
    const bool promotes = std::any_of(unoriented.begin(), unoriented.end(), [&](int u) {
      return !is_hurdle[u] && contiguous_on_circle(reduced, u);
    });
    if (promotes) info.super_hurdles.push_back(hurdle);
  }

  info.fortress = info.hurdles.size() % 2 == 1 && info.super_hurdles.size() == info.hurdles.size();
  return info;
}

DistanceBreakdown signed_distance(const SignedPermutation& p) {
  const BreakpointGraph g(p);
  DistanceBreakdown b;
  b.n = p.size();
  b.c = g.cycle_count();
  if (b.c < b.n + 1) {
    const auto components = find_components(g);
    const auto hurdles = classify_hurdles(g, components);
    b.h = hurdles.hurdles.size();
    b.f = hurdles.fortress ? 1 : 0;
  }
  b.d = b.n + 1 - b.c + b.h + b.f;
  return b;
}

std::size_t distance_lower_bound(const SignedPermutation& p) {
  return p.size() + 1 - BreakpointGraph(p).cycle_count();
}

SortingSequence extract_optimal_sequence(const SignedPermutation& p) {
  SortingSequence seq;
  SignedPermutation current = p;
  std::size_t d = signed_distance(current).d;
  const int n = static_cast<int>(p.size());
  while (d > 0) {
    bool advanced = false;
    for (int i = 1; i <= n && !advanced; ++i) {
      for (int j = i + 1; j <= n + 1; ++j) {
        SignedPermutation next = apply_reversal(current, {i, j});
        const std::size_t dn = signed_distance(next).d;
        if (dn + 1 == d) {
          seq.push_back({i, j});
          current = std::move(next);
          d = dn;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced) {
      throw NoImprovingReversal("no distance-reducing reversal for " + to_string(current) +
                                " at d=" + std::to_string(d));
    }
  }
  if (!current.is_identity()) {
    throw NoImprovingReversal("distance reached 0 on non-identity " + to_string(current));
  }
  return seq;
}

}  // namespace revga
