#include "revga/oracle_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

namespace revga {

namespace {

constexpr std::array<char, 8> kMagic{'R', 'V', 'G', 'A', 'D', 'I', 'S', 'T'};
constexpr std::size_t kHeaderSize = 24;

template <typename T>
void put_le(std::vector<char>& out, T value) {
  for (std::size_t b = 0; b < sizeof(T); ++b) out.push_back(static_cast<char>((value >> (8 * b)) & 0xFF));
}

template <typename T>
T get_le(const char* in) {
  T value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) value |= static_cast<T>(static_cast<unsigned char>(in[b])) << (8 * b);
  return value;
}

}  // namespace

void save_table(const DistanceTable& table, const std::filesystem::path& path) {
  std::vector<char> header(kMagic.begin(), kMagic.end());
  put_le<std::uint32_t>(header, kOracleCacheVersion);
  put_le<std::uint8_t>(header, static_cast<std::uint8_t>(table.kind()));
  put_le<std::uint8_t>(header, static_cast<std::uint8_t>(table.size()));
  put_le<std::uint16_t>(header, 0);
  put_le<std::uint64_t>(header, table.state_count());

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  const auto& d = table.distances();
  out.write(reinterpret_cast<const char*>(d.data()), static_cast<std::streamsize>(d.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

DistanceTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0) {
    throw CacheFormatError(path.string() + ": not a distance table cache");
  }
  const auto version = get_le<std::uint32_t>(bytes.data() + 8);
  if (version != kOracleCacheVersion) {
    throw CacheFormatError(path.string() + ": unsupported cache version " + std::to_string(version));
  }
  const auto kind_byte = get_le<std::uint8_t>(bytes.data() + 12);
  if (kind_byte > 1) throw CacheFormatError(path.string() + ": unknown table kind");
  const auto n = get_le<std::uint8_t>(bytes.data() + 13);
  const auto count = get_le<std::uint64_t>(bytes.data() + 16);
  if (bytes.size() - kHeaderSize != count) {
    throw CacheFormatError(path.string() + ": truncated or oversized payload");
  }
  std::vector<std::uint8_t> distances(bytes.begin() + kHeaderSize, bytes.end());
  try {
    return DistanceTable(static_cast<TableKind>(kind_byte), n, std::move(distances));
  } catch (const std::invalid_argument& e) {
    throw CacheFormatError(path.string() + ": " + e.what());
  }
}

std::filesystem::path cache_path(const std::filesystem::path& dir, TableKind kind, std::size_t n) {
  const char* tag = kind == TableKind::signed_reversal ? "signed" : "unsigned";
  return dir / (std::string(tag) + "-n" + std::to_string(n) + "-v" + std::to_string(kOracleCacheVersion) + ".bin");
}

DistanceTable load_or_build(const std::filesystem::path& dir, TableKind kind, std::size_t n) {
  const auto path = cache_path(dir, kind, n);
  if (std::filesystem::exists(path)) {
    try {
      DistanceTable t = load_table(path);
      if (t.kind() == kind && t.size() == n) return t;
    } catch (const CacheFormatError&) {
      // Rebuilt below.
    }
  }
  DistanceTable t = kind == TableKind::signed_reversal ? bfs_signed_distances(n) : bfs_unsigned_distances(n);
  std::filesystem::create_directories(dir);
  save_table(t, path);
  return t;
}

}  // namespace revga
