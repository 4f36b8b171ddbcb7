#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>

#include "revga/oracles.hpp"

namespace revga {

/// Binary cache for distance tables.
///
/// Layout, all integers little-endian:
///
///   offset  size  field
///        0     8  magic "RVGADIST"
///        8     4  format version (currently 1)
///       12     1  table kind (0 = unsigned, 1 = signed)
///       13     1  n
///       14     2  reserved, zero
///       16     8  state count
///       24     *  one distance byte per state, in table index order
inline constexpr std::uint32_t kOracleCacheVersion = 1;

struct CacheFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void save_table(const DistanceTable& table, const std::filesystem::path& path);

/// Throws CacheFormatError on a malformed file or version mismatch.
DistanceTable load_table(const std::filesystem::path& path);

/// Canonical file name for (kind, n, version) inside `dir`.
std::filesystem::path cache_path(const std::filesystem::path& dir, TableKind kind, std::size_t n);

/// Loads the cached table if present and valid, otherwise builds it with
/// breadth-first search and writes it back.
DistanceTable load_or_build(const std::filesystem::path& dir, TableKind kind, std::size_t n);

}  // namespace revga
