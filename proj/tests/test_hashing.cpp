#include <doctest.h>

#include <vector>

#include "corpus.hpp"
#include "ktbench/hashing.hpp"

using ktbench::BitString;
using ktbench::Rational;
using namespace ktbench::hashing;
namespace stats = ktbench::stats;

namespace {

// Schoolbook carry-less product and reduction, independent of Gf2Field::mul.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  for (unsigned i = 0; i < 32; ++i) {
    if ((b >> i) & 1U) out ^= a << i;
  }
  return out;
}

std::uint64_t poly_mod(std::uint64_t v, std::uint64_t m) {
  const int dm = 63 - __builtin_clzll(m);
  for (int d = 63; d >= dm; --d) {
    if ((v >> d) & 1U) v ^= m << (d - dm);
  }
  return v;
}

bool irreducible(std::uint64_t m) {
  const int deg = 63 - __builtin_clzll(m);
  for (std::uint64_t f = 2; f < (std::uint64_t{1} << (deg / 2 + 1)); ++f) {
    if (poly_mod(m, f) == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("modulus table") {
  const auto& table = modulus_table();
  for (unsigned n = 1; n <= kMaxFieldBits; ++n) {
    REQUIRE(table.count(n) == 1);
    CHECK((table.at(n) >> n) == 1U);
    CHECK(irreducible(table.at(n)));
  }
  CHECK(!modulus_table_version().empty());
  CHECK(parse_modulus_table("# c\n3: b\n").at(3) == 0xb);
  CHECK_THROWS_AS(parse_modulus_table("3 b\n"), ktbench::ConfigError);
  CHECK_THROWS_AS(parse_modulus_table("3: 7\n"), ktbench::ConfigError);
  CHECK_THROWS_AS(Gf2Field(0), ktbench::ConfigError);
  CHECK_THROWS_AS(Gf2Field(17), ktbench::ConfigError);
}

TEST_CASE("field multiplication matches schoolbook arithmetic") {
  for (unsigned n = 1; n <= 8; ++n) {
    const Gf2Field f(n);
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      for (std::uint32_t b = 0; b < f.order(); ++b) {
        REQUIRE(f.mul(a, b) == poly_mod(clmul(a, b), f.modulus()));
      }
    }
  }
  const Gf2Field f16(16);
  ktbench::SeededRng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto a = static_cast<std::uint32_t>(rng.below(1U << 16));
    const auto b = static_cast<std::uint32_t>(rng.below(1U << 16));
    REQUIRE(f16.mul(a, b) == poly_mod(clmul(a, b), f16.modulus()));
  }
}

TEST_CASE("hash examples") {
  const auto x = BitString::parse("1011");
  CHECK(hash(HashSeed{1, 0, 4}, x) == x);
  CHECK(hash(HashSeed{0, 0b0110, 4}, x) == BitString::parse("0110"));
  CHECK_THROWS_AS(hash(HashSeed{1, 0, 5}, x), ktbench::LengthMismatch);
  const HashSeed s{0b1010, 0b0011, 4};
  CHECK(s.to_bits() == BitString::parse("10100011"));
  CHECK(HashSeed::from_bits(s.to_bits()) == s);
  CHECK_THROWS_AS(HashSeed::from_bits(BitString::parse("101")), ktbench::LengthMismatch);
}

TEST_CASE("truncation") {
  const auto y = BitString::parse("110");
  CHECK(truncate(y, 3) == y);
  CHECK(truncate(y, 0).empty());
  CHECK(truncate(y, 2) == BitString::parse("11"));
  CHECK_THROWS_AS(truncate(y, 4), std::out_of_range);
}

TEST_CASE("pairwise independence for every truncation, n <= 4") {
  for (unsigned n = 1; n <= 4; ++n) {
    const Gf2Field f(n);
    const std::uint64_t seeds = std::uint64_t{1} << (2 * n);
    for (unsigned j = 1; j <= n; ++j) {
      const std::uint32_t buckets = 1U << j;
      for (std::uint32_t x = 0; x < f.order(); ++x) {
        for (std::uint32_t x2 = 0; x2 < f.order(); ++x2) {
          if (x == x2) continue;
          std::vector<std::uint64_t> joint(buckets * buckets, 0);
          for (std::uint32_t a = 0; a < f.order(); ++a) {
            for (std::uint32_t b = 0; b < f.order(); ++b) {
              const auto y = hash_value(f, a, b, x) >> (n - j);
              const auto y2 = hash_value(f, a, b, x2) >> (n - j);
              ++joint[y * buckets + y2];
            }
          }
          for (auto c : joint) REQUIRE(Rational(c, seeds) == ktbench::pow2(-2 * static_cast<int>(j)));
        }
      }
    }
  }
}

TEST_CASE("exact half-power comparison") {
  CHECK(within_half_power_bound(Rational(1, 2), 2));
  CHECK_FALSE(within_half_power_bound(Rational(1, 2) + Rational(1, 1000000), 2));
  CHECK(within_half_power_bound(Rational(7071, 10000), 1));
  CHECK_FALSE(within_half_power_bound(Rational(7072, 10000), 1));
  CHECK(within_half_power_bound(Rational(0), 0));
}

TEST_CASE("lhl check against an explicit joint distribution") {
  // oracle: build (seed, [h(X)]_j) and (seed, U_j) and take their SD directly
  auto oracle = [](const stats::ExactDistribution& x, unsigned j) {
    const unsigned n = static_cast<unsigned>(x.outcome_bits());
    const Gf2Field f(n);
    stats::ExactDistribution real(2 * n + j);
    stats::ExactDistribution ideal(2 * n + j);
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      for (std::uint32_t b = 0; b < f.order(); ++b) {
        const BitString seed = HashSeed{a, b, n}.to_bits();
        for (const auto& [v, w] : x.weights()) {
          real.add(seed + truncate(hash(HashSeed{a, b, n}, v), j), w << j);
        }
        for (std::uint32_t y = 0; y < (1U << j); ++y) ideal.add(seed + BitString::from_uint(y, j), x.total_weight());
      }
    }
    return stats::sd(real, ideal);
  };
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto flat = ktbench::corpus::flat_subset(4, 3, seed);
    for (unsigned d = 0; d <= 3; ++d) {
      const auto r = lhl_check(flat, 3, d);
      CHECK(r.out_bits == 3 - d);
      CHECK(r.measured_sd == oracle(flat, 3 - d));
    }
    const auto tl = ktbench::corpus::two_level(4, 2, seed);
    CHECK(lhl_check(tl, 2, 1).measured_sd == oracle(tl, 1));
  }
}

TEST_CASE("lhl examples") {
  const auto point = stats::ExactDistribution::point_mass(BitString::parse("0110"));
  const auto r = lhl_check(point, 0, 0);
  CHECK(r.measured_sd == 0);
  CHECK(r.holds);
  const auto uniform = lhl_check(stats::ExactDistribution::uniform(5), 5, 0);
  CHECK(uniform.out_bits == 5);
  CHECK(uniform.measured_sd > 0);  // a = 0 seeds are constant
  CHECK(uniform.holds);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto v = lhl_check(ktbench::corpus::flat_subset(6, 4, seed), 4, 2);
    CHECK(v.measured_sd <= Rational(1, 2));
    CHECK(v.holds);
  }
  CHECK_THROWS_AS(lhl_check(point, 1, 0), ktbench::ConfigError);
  CHECK_THROWS_AS(lhl_check(stats::ExactDistribution::uniform(3), 2, 3), ktbench::ConfigError);
  CHECK_THROWS_AS(lhl_check(stats::ExactDistribution::uniform(11), 1, 0), ktbench::BudgetExceeded);
}

TEST_CASE("lhl holds across the adversarial corpus") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (unsigned k = 1; k <= 5; ++k) {
      for (unsigned d = 0; d <= k; ++d) {
        CHECK(lhl_check(ktbench::corpus::flat_subset(6, k, seed), k, d).holds);
        CHECK(lhl_check(ktbench::corpus::two_level(6, k, seed), k, d).holds);
      }
    }
    CHECK(lhl_check(stats::ExactDistribution::point_mass(BitString::from_uint(seed, 6)), 0, 0).holds);
  }
}
