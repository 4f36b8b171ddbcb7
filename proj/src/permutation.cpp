#include "revga/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "revga/rng.hpp"

namespace revga {

namespace {

void check_bijection(std::span<const int> values) {
  const auto n = values.size();
  if (n == 0) throw InvalidPermutation("permutation must have at least one element");
  std::vector<bool> seen(n + 1, false);
  for (int v : values) {
    const long mag = v < 0 ? -static_cast<long>(v) : v;
    if (mag < 1 || mag > static_cast<long>(n)) {
      throw InvalidPermutation("value " + std::to_string(v) + " outside 1.." + std::to_string(n));
    }
    if (seen[mag]) throw InvalidPermutation("value " + std::to_string(mag) + " repeated");
    seen[mag] = true;
  }
}

}  // namespace

void Reversal::validate(std::size_t n) const {
  if (i < 1 || i >= j || j > static_cast<int>(n) + 1) {
    throw InvalidReversal("reversal (" + std::to_string(i) + "," + std::to_string(j) +
                          ") invalid for size " + std::to_string(n));
  }
}

UnsignedPermutation::UnsignedPermutation(std::vector<int> elements) : elements_(std::move(elements)) {
  check_bijection(elements_);
  if (std::any_of(elements_.begin(), elements_.end(), [](int v) { return v < 0; })) {
    throw InvalidPermutation("unsigned permutation cannot hold negative values");
  }
}

UnsignedPermutation UnsignedPermutation::identity(std::size_t n) {
  std::vector<int> e(n);
  std::iota(e.begin(), e.end(), 1);
  return UnsignedPermutation(std::move(e));
}

bool UnsignedPermutation::is_identity() const noexcept {
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    if (elements_[k] != static_cast<int>(k) + 1) return false;
  }
  return true;
}

SignedPermutation::SignedPermutation(std::vector<int> values) : values_(std::move(values)) {
  check_bijection(values_);
}

SignedPermutation::SignedPermutation(const UnsignedPermutation& magnitudes, const std::vector<bool>& positive) {
  if (positive.size() != magnitudes.size()) {
    throw InvalidPermutation("sign vector length does not match permutation size");
  }
  values_.resize(magnitudes.size());
  for (std::size_t k = 0; k < values_.size(); ++k) {
    values_[k] = positive[k] ? magnitudes[k] : -magnitudes[k];
  }
}

SignedPermutation SignedPermutation::identity(std::size_t n) {
  std::vector<int> e(n);
  std::iota(e.begin(), e.end(), 1);
  return SignedPermutation(std::move(e));
}

UnsignedPermutation SignedPermutation::magnitudes() const {
  std::vector<int> e(values_.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = magnitude(k);
  return UnsignedPermutation(std::move(e));
}

bool SignedPermutation::is_identity() const noexcept {
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] != static_cast<int>(k) + 1) return false;
  }
  return true;
}

UnsignedPermutation apply_reversal(const UnsignedPermutation& p, Reversal r) {
  r.validate(p.size());
  std::vector<int> e = p.elements_;
  std::reverse(e.begin() + (r.i - 1), e.begin() + (r.j - 1));
  return UnsignedPermutation(UnsignedPermutation::Unchecked{}, std::move(e));
}

SignedPermutation apply_reversal(const SignedPermutation& p, Reversal r) {
  r.validate(p.size());
  std::vector<int> v = p.values_;
  auto first = v.begin() + (r.i - 1);
  auto last = v.begin() + (r.j - 1);
  std::reverse(first, last);
  std::for_each(first, last, [](int& x) { x = -x; });
  return SignedPermutation(SignedPermutation::Unchecked{}, std::move(v));
}

std::vector<Strip> find_strips(const UnsignedPermutation& p) {
  std::vector<Strip> strips;
  const int n = static_cast<int>(p.size());
  int k = 0;
  while (k < n) {
    int end = k;
    StripDirection dir = StripDirection::singleton;
    if (k + 1 < n) {
      const int step = p[k + 1] - p[k];
      if (step == 1 || step == -1) {
        dir = step == 1 ? StripDirection::ascending : StripDirection::descending;
        end = k + 1;
        while (end + 1 < n && p[end + 1] - p[end] == step) ++end;
      }
    }
    strips.push_back({k + 1, end + 1, dir});
    k = end + 1;
  }
  return strips;
}

UnsignedPermutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<int> e(n);
  std::iota(e.begin(), e.end(), 1);
  if (n >= 2) {
    for (std::size_t s = 0; s < n; ++s) {
      const auto a = rng.below(n);
      auto b = rng.below(n - 1);
      if (b >= a) ++b;
      std::swap(e[a], e[b]);
    }
  }
  return UnsignedPermutation(std::move(e));
}

SignedPermutation random_signed_permutation(std::size_t n, Rng& rng) {
  std::vector<int> e(n);
  std::iota(e.begin(), e.end(), 1);
  for (std::size_t k = n; k > 1; --k) std::swap(e[k - 1], e[rng.below(k)]);
  for (int& x : e) {
    if (rng.below(2) == 0) x = -x;
  }
  return SignedPermutation(std::move(e));
}

UnsignedPermutation ParsedPermutation::as_unsigned() const {
  if (is_signed) throw ParseError("expected an unsigned permutation");
  return UnsignedPermutation(values);
}

SignedPermutation ParsedPermutation::as_signed() const {
  return SignedPermutation(values);
}

ParsedPermutation parse_permutation(std::string_view text) {
  ParsedPermutation out;
  std::size_t k = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ','; };
  while (k < text.size()) {
    if (is_space(text[k])) {
      ++k;
      continue;
    }
    bool negative = false;
    if (text[k] == '+' || text[k] == '-') {
      out.is_signed = true;
      negative = text[k] == '-';
      ++k;
    }
    int value = 0;
    const char* first = text.data() + k;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first || value < 0) {
      throw ParseError("malformed permutation near '" + std::string(text.substr(k, 8)) + "'");
    }
    k += static_cast<std::size_t>(ptr - first);
    if (k < text.size() && !is_space(text[k])) {
      throw ParseError("unexpected character '" + std::string(1, text[k]) + "' in permutation");
    }
    out.values.push_back(negative ? -value : value);
  }
  if (out.values.empty()) throw ParseError("empty permutation");
  try {
    check_bijection(out.values);
  } catch (const InvalidPermutation& e) {
    throw ParseError(e.what());
  }
  return out;
}

std::string to_string(const UnsignedPermutation& p) {
  std::ostringstream os;
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? " " : "") << p[k];
  return os.str();
}

std::string to_string(const SignedPermutation& p) {
  std::ostringstream os;
  for (std::size_t k = 0; k < p.size(); ++k) os << (k ? " " : "") << (p[k] > 0 ? "+" : "") << p[k];
  return os.str();
}

std::string to_string(Reversal r) {
  return std::to_string(r.i) + " " + std::to_string(r.j);
}

}  // namespace revga
