#include <doctest.h>

#include <set>

#include "ktbench/bits.hpp"
#include "ktbench/rng.hpp"

using ktbench::BitString;

TEST_CASE("parse and to_string round trip") {
  for (const char* s : {"", "0", "1", "1011", "0000000000000000000000000000000000000000000000000000000000000000001"}) {
    CHECK(BitString::parse(s).to_string() == s);
  }
  CHECK_THROWS(BitString::parse("10x"));
}

TEST_CASE("from_uint is MSB first") {
  const auto b = BitString::from_uint(0b1011, 4);
  CHECK(b.to_string() == "1011");
  CHECK(b[0]);
  CHECK_FALSE(b[1]);
  CHECK(b.to_uint() == 11);
  CHECK(BitString::from_uint(1, 6).to_string() == "000001");
}

TEST_CASE("hex packs nibbles and pads the tail") {
  CHECK(BitString::parse("1011").to_hex() == "b");
  CHECK(BitString::parse("101").to_hex() == "a");
  CHECK(BitString().to_hex().empty());
  ktbench::SeededRng rng(3);
  for (std::size_t n = 0; n < 140; n += 7) {
    const auto x = rng.bits(n);
    CHECK(BitString::from_hex(x.to_hex(), n) == x);
  }
}

TEST_CASE("slices, appends and reads agree with the character form") {
  ktbench::SeededRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = rng.bits(rng.below(150));
    const auto b = rng.bits(rng.below(150));
    const auto ab = a + b;
    CHECK(ab.to_string() == a.to_string() + b.to_string());
    CHECK(ab.prefix(a.size()) == a);
    CHECK(ab.suffix_from(a.size()) == b);
    if (ab.size() >= 10) {
      const std::size_t pos = rng.below(ab.size() - 9);
      const auto text = ab.to_string().substr(pos, 9);
      CHECK(ab.read_uint(pos, 9) == std::stoull(text, nullptr, 2));
    }
    std::size_t ones = 0;
    for (char ch : ab.to_string()) ones += ch == '1';
    CHECK(ab.popcount() == ones);
  }
}

TEST_CASE("ordering is by length, then lexicographic") {
  CHECK(BitString::parse("1") < BitString::parse("00"));
  CHECK(BitString::parse("01") < BitString::parse("10"));
  CHECK(BitString() < BitString::parse("0"));
  std::set<BitString> all;
  for (std::size_t n = 0; n <= 3; ++n) {
    for (std::uint64_t v = 0; v < (1U << n); ++v) all.insert(BitString::from_uint(v, n));
  }
  std::string order;
  for (const auto& b : all) order += "[" + b.to_string() + "]";
  CHECK(order == "[][0][1][00][01][10][11][000][001][010][011][100][101][110][111]");
}

TEST_CASE("assign_uint reuses storage and clears stale bits") {
  auto b = BitString::from_uint(~std::uint64_t{0}, 64);
  b.assign_uint(5, 3);
  CHECK(b == BitString::parse("101"));
  b.push_back(false);
  CHECK(b == BitString::parse("1010"));
}

TEST_CASE("ceil_log2") {
  CHECK(ktbench::ceil_log2(0) == 0);
  CHECK(ktbench::ceil_log2(1) == 0);
  CHECK(ktbench::ceil_log2(2) == 1);
  CHECK(ktbench::ceil_log2(3) == 2);
  CHECK(ktbench::ceil_log2(8) == 3);
  CHECK(ktbench::ceil_log2(9) == 4);
}

TEST_CASE("inner product is the parity of the AND") {
  CHECK(ktbench::inner_product(BitString::parse("101"), BitString::parse("111")) == false);
  CHECK(ktbench::inner_product(BitString::parse("101"), BitString::parse("100")) == true);
  CHECK_THROWS(ktbench::inner_product(BitString::parse("1"), BitString::parse("10")));
}

TEST_CASE("seeded draws are reproducible") {
  ktbench::SeededRng a(42), b(42);
  for (int i = 0; i < 50; ++i) CHECK(a.below(1000) == b.below(1000));
  CHECK(a.bits(77) == b.bits(77));
  CHECK(ktbench::mix_seed(1) != ktbench::mix_seed(2));
}
