#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace revga {

class Rng;

struct InvalidPermutation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidReversal : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reversal of the half-open, 1-based position interval [i, j).
///
/// For a permutation of size n the valid range is 1 <= i < j <= n+1, so
/// (1, n+1) reverses the whole sequence. On signed permutations every
/// element inside the interval also has its sign flipped.
struct Reversal {
  int i = 1;
  int j = 2;

  friend bool operator==(const Reversal&, const Reversal&) = default;
  friend auto operator<=>(const Reversal&, const Reversal&) = default;

  /// Throws InvalidReversal unless 1 <= i < j <= n+1.
  void validate(std::size_t n) const;
};

using SortingSequence = std::vector<Reversal>;

/// An ordering of 1..n.
class UnsignedPermutation {
 public:
  /// Throws InvalidPermutation unless `elements` is a bijection onto 1..n, n >= 1.
  explicit UnsignedPermutation(std::vector<int> elements);

  static UnsignedPermutation identity(std::size_t n);

  std::size_t size() const noexcept { return elements_.size(); }
  /// 0-based access.
  int operator[](std::size_t k) const noexcept { return elements_[k]; }
  std::span<const int> elements() const noexcept { return elements_; }

  bool is_identity() const noexcept;

  friend bool operator==(const UnsignedPermutation&, const UnsignedPermutation&) = default;

 private:
  struct Unchecked {};
  UnsignedPermutation(Unchecked, std::vector<int> elements) : elements_(std::move(elements)) {}
  friend UnsignedPermutation apply_reversal(const UnsignedPermutation&, Reversal);

  std::vector<int> elements_;
};

/// An ordering of 1..n with one orientation per element, stored as signed
/// integers (+x / -x).
class SignedPermutation {
 public:
  /// Throws InvalidPermutation unless the magnitudes form a bijection onto 1..n.
  explicit SignedPermutation(std::vector<int> values);

  /// Pairs magnitudes with signs; `positive[k]` selects +p[k], otherwise -p[k].
  SignedPermutation(const UnsignedPermutation& magnitudes, const std::vector<bool>& positive);

  static SignedPermutation identity(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  /// 0-based signed value.
  int operator[](std::size_t k) const noexcept { return values_[k]; }
  int magnitude(std::size_t k) const noexcept { return values_[k] < 0 ? -values_[k] : values_[k]; }
  bool positive(std::size_t k) const noexcept { return values_[k] > 0; }
  std::span<const int> values() const noexcept { return values_; }

  UnsignedPermutation magnitudes() const;
  bool is_identity() const noexcept;

  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;

 private:
  struct Unchecked {};
  SignedPermutation(Unchecked, std::vector<int> values) : values_(std::move(values)) {}
  friend SignedPermutation apply_reversal(const SignedPermutation&, Reversal);

  std::vector<int> values_;
};

UnsignedPermutation apply_reversal(const UnsignedPermutation& p, Reversal r);
SignedPermutation apply_reversal(const SignedPermutation& p, Reversal r);

/// Applies `seq` in order. Throws InvalidReversal on the first bad step.
template <typename Perm>
Perm apply_sequence(Perm p, std::span<const Reversal> seq) {
  for (const Reversal& r : seq) p = apply_reversal(p, r);
  return p;
}

inline bool is_identity(const UnsignedPermutation& p) noexcept { return p.is_identity(); }
inline bool is_identity(const SignedPermutation& p) noexcept { return p.is_identity(); }

enum class StripDirection { ascending, descending, singleton };

/// Maximal run of consecutive values, 1-based inclusive positions.
struct Strip {
  int start = 1;
  int end = 1;
  StripDirection direction = StripDirection::singleton;

  int length() const noexcept { return end - start + 1; }
  friend bool operator==(const Strip&, const Strip&) = default;
};

/// Maximal strips of the unpadded permutation, left to right.
std::vector<Strip> find_strips(const UnsignedPermutation& p);

/// Starts from the identity and exchanges two distinct uniformly drawn
/// positions n times. For n = 1 no swap is possible.
UnsignedPermutation random_permutation(std::size_t n, Rng& rng);

/// Uniformly random signed permutation (Fisher-Yates plus independent signs).
SignedPermutation random_signed_permutation(std::size_t n, Rng& rng);

/// Whitespace-separated integers, each optionally prefixed with '+' or '-'.
/// Any explicit sign marks the text as signed.
struct ParsedPermutation {
  bool is_signed = false;
  std::vector<int> values;

  UnsignedPermutation as_unsigned() const;
  SignedPermutation as_signed() const;
};

ParsedPermutation parse_permutation(std::string_view text);

std::string to_string(const UnsignedPermutation& p);
/// Always prints explicit signs, e.g. "+4 -1 +3 -2".
std::string to_string(const SignedPermutation& p);
std::string to_string(Reversal r);

}  // namespace revga
