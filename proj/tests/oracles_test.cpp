#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "revga/breakpoint_graph.hpp"
#include "revga/hp_distance.hpp"
#include "revga/oracle_cache.hpp"
#include "revga/oracles.hpp"
#include "revga/rng.hpp"

using namespace revga;

namespace {

UnsignedPermutation U(std::vector<int> v) { return UnsignedPermutation(std::move(v)); }

// Bellman check: every non-identity state is one more than its best
// neighbour, and no neighbour is more than one step closer.
void expect_bellman(const DistanceTable& t) {
  const int n = static_cast<int>(t.size());
  const bool is_signed = t.kind() == TableKind::signed_reversal;
  for (std::size_t index = 0; index < t.state_count(); ++index) {
    const std::vector<int> v = t.state_at(index);
    std::size_t best = 1000;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n + 1; ++j) {
        std::size_t d;
        if (is_signed) {
          d = t.distance(apply_reversal(SignedPermutation(v), {i, j}));
        } else {
          d = t.distance(apply_reversal(UnsignedPermutation(v), {i, j}));
        }
        ASSERT_LE(t.at_index(index), d + 1);
        best = std::min(best, d);
      }
    }
    if (index == 0) {
      ASSERT_EQ(t.at_index(index), 0);
    } else {
      ASSERT_EQ(t.at_index(index), best + 1);
    }
  }
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("revga-test-" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Ranking, RoundTripsAllPermutations) {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::uint64_t r = 0; r < factorial(n); ++r) {
      ASSERT_EQ(permutation_rank(permutation_unrank(r, n)), r);
    }
  }
  EXPECT_EQ(permutation_rank(std::vector<int>{1, 2, 3}), 0u);
  EXPECT_EQ(permutation_rank(std::vector<int>{3, 2, 1}), 5u);
}

TEST(BfsSigned, SmallTables) {
  const auto one = bfs_signed_distances(1);
  EXPECT_EQ(one.state_count(), 2u);
  EXPECT_EQ(one.distance(SignedPermutation({1})), 0u);
  EXPECT_EQ(one.distance(SignedPermutation({-1})), 1u);

  const auto two = bfs_signed_distances(2);
  EXPECT_EQ(two.state_count(), 8u);
  EXPECT_EQ(two.distance(SignedPermutation({2, 1})), 3u);
  EXPECT_EQ(two.distance(SignedPermutation({-2, -1})), 1u);

  EXPECT_EQ(bfs_signed_distances(4).distance(SignedPermutation({4, -1, 3, -2})), 3u);
}

TEST(BfsSigned, BellmanConditionHolds) {
  for (std::size_t n = 1; n <= 4; ++n) expect_bellman(bfs_signed_distances(n));
}

TEST(BfsSigned, SizeCap) {
  EXPECT_THROW(bfs_signed_distances(8), SizeTooLarge);
  EXPECT_THROW(bfs_unsigned_distances(10), SizeTooLarge);
  EXPECT_THROW(bfs_unsigned_distance(UnsignedPermutation::identity(12)), SizeTooLarge);
  EXPECT_THROW(exhaustive_embedding_min(UnsignedPermutation::identity(17)), SizeTooLarge);
}

TEST(BfsUnsigned, Examples) {
  EXPECT_EQ(bfs_unsigned_distance(UnsignedPermutation::identity(5)), 0u);
  EXPECT_EQ(bfs_unsigned_distance(U({2, 1})), 1u);
  EXPECT_EQ(bfs_unsigned_distance(U({4, 1, 3, 2})), 2u);
  EXPECT_EQ(bfs_unsigned_distance(U({3, 4, 1, 2})), 2u);
}

TEST(BfsUnsigned, BellmanConditionHolds) {
  for (std::size_t n = 1; n <= 6; ++n) expect_bellman(bfs_unsigned_distances(n));
}

TEST(EmbeddingMin, Examples) {
  const auto [d21, g21] = exhaustive_embedding_min(U({2, 1}));
  EXPECT_EQ(d21, 1u);
  EXPECT_EQ(g21, (std::vector<bool>{false, false}));

  const auto [d_id, g_id] = exhaustive_embedding_min(UnsignedPermutation::identity(6));
  EXPECT_EQ(d_id, 0u);
  EXPECT_EQ(g_id, std::vector<bool>(6, true));
}

TEST(EmbeddingMin, EqualsUnsignedBfsExhaustivelyToSix) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto table = bfs_unsigned_distances(n);
    for (std::size_t index = 0; index < table.state_count(); ++index) {
      const UnsignedPermutation p(table.state_at(index));
      ASSERT_EQ(exhaustive_embedding_min(p).first, table.at_index(index)) << to_string(p);
    }
  }
}

TEST(EmbeddingMin, EqualsUnsignedBfsOnRandomEights) {
  Rng rng(808);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_permutation(8, rng);
    const auto [d, genome] = exhaustive_embedding_min(p);
    ASSERT_EQ(d, bfs_unsigned_distance(p)) << to_string(p);
    ASSERT_EQ(signed_distance(SignedPermutation(p, genome)).d, d);
  }
}

TEST(TrivialSort, Examples) {
  EXPECT_TRUE(trivial_sort(UnsignedPermutation::identity(5)).empty());
  // n 1 2 ... n-1: value k sits at k+1 for every k, so n-1 steps.
  const auto rotated = U({6, 1, 2, 3, 4, 5});
  const auto seq = trivial_sort(rotated);
  EXPECT_EQ(seq.size(), 5u);
  EXPECT_EQ(seq.front(), (Reversal{1, 3}));
  EXPECT_TRUE(apply_sequence(rotated, std::span<const Reversal>(seq)).is_identity());
}

TEST(TrivialSort, BoundAndReplay) {
  Rng rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_permutation(20, rng);
    const auto seq = trivial_sort(p);
    EXPECT_LE(seq.size(), 19u);
    EXPECT_TRUE(apply_sequence(p, std::span<const Reversal>(seq)).is_identity());
  }
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    const auto p = random_permutation(n, rng);
    ASSERT_LE(trivial_sort(p).size(), n - 1);
  }
}

TEST(GreedyBreakpointSort, Examples) {
  EXPECT_TRUE(greedy_breakpoint_sort(UnsignedPermutation::identity(7)).empty());
  EXPECT_EQ(greedy_breakpoint_sort(U({2, 1})), (SortingSequence{{1, 3}}));
  // No descending strip yet; (1,4) drops a breakpoint and leaves 4 3 2.
  const auto p = U({3, 4, 1, 2});
  const auto seq = greedy_breakpoint_sort(p);
  EXPECT_EQ(seq, (SortingSequence{{1, 4}, {2, 5}}));
  EXPECT_TRUE(apply_sequence(p, std::span<const Reversal>(seq)).is_identity());
}

TEST(GreedyBreakpointSort, ProgressInvariantsOnRandomThirties) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_permutation(30, rng);
    const auto seq = greedy_breakpoint_sort(p);
    std::vector<std::size_t> bps{breakpoint_count(p)};
    UnsignedPermutation cur = p;
    for (const Reversal& r : seq) {
      cur = apply_reversal(cur, r);
      bps.push_back(breakpoint_count(cur));
    }
    ASSERT_TRUE(cur.is_identity());
    ASSERT_GE(2 * seq.size(), breakpoint_count(p));
    for (std::size_t k = 1; k < bps.size(); ++k) ASSERT_LE(bps[k], bps[k - 1]);
    for (std::size_t k = 2; k < bps.size(); ++k) ASSERT_LT(bps[k], bps[k - 2]);
  }
}

TEST(GreedyBreakpointSort, NeverBelowExactDistance) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_permutation(8, rng);
    ASSERT_GE(greedy_breakpoint_sort(p).size(), bfs_unsigned_distance(p));
  }
}

TEST(OracleCache, RoundTripAndHeader) {
  TempDir dir;
  const auto table = bfs_signed_distances(3);
  const auto path = dir.path() / "t.bin";
  save_table(table, path);
  EXPECT_EQ(std::filesystem::file_size(path), 24u + 48u);

  std::ifstream in(path, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 8), "RVGADIST");
  EXPECT_EQ(bytes[8], 1);   // version, little-endian
  EXPECT_EQ(bytes[9], 0);
  EXPECT_EQ(bytes[12], 1);  // signed
  EXPECT_EQ(bytes[13], 3);  // n
  EXPECT_EQ(bytes[16], 48);

  const auto loaded = load_table(path);
  EXPECT_EQ(loaded.kind(), TableKind::signed_reversal);
  EXPECT_EQ(loaded.size(), 3u);
  EXPECT_EQ(loaded.distances(), table.distances());
}

TEST(OracleCache, RejectsCorruptFiles) {
  TempDir dir;
  const auto path = dir.path() / "bad.bin";
  {
    std::ofstream out(path, std::ios::binary);
    out << "not a cache";
  }
  EXPECT_THROW(load_table(path), CacheFormatError);

  save_table(bfs_unsigned_distances(4), path);
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 1);
  EXPECT_THROW(load_table(path), CacheFormatError);
}

TEST(OracleCache, LoadOrBuildReusesAndRepairs) {
  TempDir dir;
  const auto built = load_or_build(dir.path(), TableKind::unsigned_reversal, 5);
  const auto path = cache_path(dir.path(), TableKind::unsigned_reversal, 5);
  ASSERT_TRUE(std::filesystem::exists(path));
  EXPECT_EQ(path.filename(), "unsigned-n5-v1.bin");
  EXPECT_EQ(load_or_build(dir.path(), TableKind::unsigned_reversal, 5).distances(), built.distances());

  std::filesystem::resize_file(path, 10);
  EXPECT_EQ(load_or_build(dir.path(), TableKind::unsigned_reversal, 5).distances(), built.distances());
  EXPECT_EQ(load_table(path).distances(), built.distances());
}
