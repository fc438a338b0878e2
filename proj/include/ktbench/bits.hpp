#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <boost/container/small_vector.hpp>

namespace ktbench {

/// A finite bitstring, MSB-first.
///
/// Bit 0 is the first (leftmost) bit. Storage packs bit i into word i/64 at
/// position 63 - i%64, so comparing the words of two equal-length strings is
/// lexicographic comparison. Unused trailing bits of the last word are zero.
/// Ordering is by length first, then lexicographic; this is the program
/// enumeration order used throughout.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size);

  /// The low `width` bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);
  /// Parses a string of '0'/'1' characters.
  static BitString parse(std::string_view text);
  /// Inverse of to_hex().
  static BitString from_hex(std::string_view hex, std::size_t size);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool operator[](std::size_t i) const {
    return (words_[i >> 6] >> (63 - (i & 63))) & 1U;
  }
  void set(std::size_t i, bool value);
  void push_back(bool value);
  BitString& append(const BitString& other);
  /// Appends the low `width` bits of `value`.
  BitString& append_uint(std::uint64_t value, std::size_t width);

  BitString slice(std::size_t pos, std::size_t len) const;
  BitString prefix(std::size_t len) const { return slice(0, len); }
  BitString suffix_from(std::size_t pos) const { return slice(pos, size_ - pos); }

  /// Value of the string read as a big-endian integer. Requires size() <= 64.
  std::uint64_t to_uint() const;
  /// Reads `len` bits starting at `pos` as a big-endian integer (len <= 64).
  std::uint64_t read_uint(std::size_t pos, std::size_t len) const;

  /// Overwrites this string with the low `width` bits of `value`, reusing storage.
  void assign_uint(std::uint64_t value, std::size_t width);
  void clear() {
    words_.clear();
    size_ = 0;
  }

  std::size_t popcount() const;

  std::string to_string() const;
  /// Bits packed MSB-first into hex nibbles; the last nibble is right-padded
  /// with zeros. The empty string maps to "".
  std::string to_hex() const;

  std::size_t hash() const;

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

 private:
  void resize_words() { words_.resize((size_ + 63) / 64, 0); }

  boost::container::small_vector<std::uint64_t, 2> words_;
  std::size_t size_ = 0;
};

BitString operator+(BitString a, const BitString& b);

/// Smallest L with 2^L >= n; ceil_log2(0) = ceil_log2(1) = 0.
unsigned ceil_log2(std::uint64_t n);

/// XOR inner product of two equal-length strings.
bool inner_product(const BitString& a, const BitString& b);

struct BitStringHash {
  std::size_t operator()(const BitString& b) const { return b.hash(); }
};

}  // namespace ktbench

template <>
struct std::hash<ktbench::BitString> {
  std::size_t operator()(const ktbench::BitString& b) const { return b.hash(); }
};
