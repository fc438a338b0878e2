#include "ktbench/bits.hpp"

#include <bit>
#include <stdexcept>

namespace ktbench {

namespace {

std::uint64_t low_mask(std::size_t width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitString::BitString(std::size_t size) : size_(size) { resize_words(); }

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  BitString out;
  out.assign_uint(value, width);
  return out;
}

BitString BitString::parse(std::string_view text) {
  BitString out;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("BitString::parse: expected '0' or '1'");
    out.push_back(c == '1');
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t size) {
  if (hex.size() != (size + 3) / 4) throw std::invalid_argument("BitString::from_hex: length mismatch");
  BitString out;
  for (char c : hex) {
    int d = hex_digit(c);
    if (d < 0) throw std::invalid_argument("BitString::from_hex: bad digit");
    out.append_uint(static_cast<std::uint64_t>(d), 4);
  }
  for (std::size_t i = size; i < out.size(); ++i) {
    if (out[i]) throw std::invalid_argument("BitString::from_hex: nonzero padding");
  }
  return out.prefix(size);
}

void BitString::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (63 - (i & 63));
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

void BitString::push_back(bool value) {
  if ((size_ & 63) == 0) words_.push_back(0);
  ++size_;
  if (value) set(size_ - 1, true);
}

BitString& BitString::append_uint(std::uint64_t value, std::size_t width) {
  if (width == 0) return *this;
  value &= low_mask(width);
  const std::size_t used = size_ & 63;
  if (used == 0) {
    words_.push_back(value << (64 - width));
  } else {
    const std::size_t free = 64 - used;
    if (width <= free) {
      words_.back() |= value << (free - width);
    } else {
      words_.back() |= value >> (width - free);
      words_.push_back(value << (64 - (width - free)));
    }
  }
  size_ += width;
  return *this;
}

BitString& BitString::append(const BitString& other) {
  std::size_t remaining = other.size_;
  for (std::size_t w = 0; remaining > 0; ++w) {
    const std::size_t take = remaining < 64 ? remaining : 64;
    append_uint(other.words_[w] >> (64 - take), take);
    remaining -= take;
  }
  return *this;
}

std::uint64_t BitString::read_uint(std::size_t pos, std::size_t len) const {
  if (len == 0) return 0;
  if (len > 64 || pos + len > size_) throw std::out_of_range("BitString::read_uint");
  const std::size_t word = pos >> 6;
  const std::size_t offset = pos & 63;
  std::uint64_t hi = words_[word] << offset;
  if (offset != 0 && offset + len > 64) hi |= words_[word + 1] >> (64 - offset);
  return hi >> (64 - len);
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > size_) throw std::out_of_range("BitString::slice");
  BitString out;
  std::size_t done = 0;
  while (done < len) {
    const std::size_t take = (len - done) < 64 ? (len - done) : 64;
    out.append_uint(read_uint(pos + done, take), take);
    done += take;
  }
  return out;
}

std::uint64_t BitString::to_uint() const {
  if (size_ > 64) throw std::out_of_range("BitString::to_uint: more than 64 bits");
  return size_ == 0 ? 0 : words_[0] >> (64 - size_);
}

void BitString::assign_uint(std::uint64_t value, std::size_t width) {
  if (width > 64) throw std::out_of_range("BitString::assign_uint: width > 64");
  words_.clear();
  size_ = 0;
  append_uint(value, width);
}

std::size_t BitString::popcount() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::string BitString::to_string() const {
  std::string out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back((*this)[i] ? '1' : '0');
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t pos = 0; pos < size_; pos += 4) {
    const std::size_t take = (size_ - pos) < 4 ? (size_ - pos) : 4;
    const auto nibble = read_uint(pos, take) << (4 - take);
    out.push_back(kDigits[nibble]);
  }
  return out;
}

std::size_t BitString::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    if (a.words_[w] != b.words_[w]) return a.words_[w] <=> b.words_[w];
  }
  return std::strong_ordering::equal;
}

BitString operator+(BitString a, const BitString& b) {
  a.append(b);
  return a;
}

unsigned ceil_log2(std::uint64_t n) {
  unsigned l = 0;
  while (l < 64 && (std::uint64_t{1} << l) < n) ++l;
  return l;
}

bool inner_product(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner_product: length mismatch");
  std::size_t ones = 0;
  for (std::size_t pos = 0; pos < a.size(); pos += 64) {
    const std::size_t take = (a.size() - pos) < 64 ? (a.size() - pos) : 64;
    ones += static_cast<std::size_t>(std::popcount(a.read_uint(pos, take) & b.read_uint(pos, take)));
  }
  return (ones & 1U) != 0;
}

}  // namespace ktbench
