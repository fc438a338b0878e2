#include <doctest.h>

#include "ktbench/hardcore.hpp"
#include "ktbench/prg.hpp"
#include "ktbench/rng.hpp"

using ktbench::BitString;
using ktbench::Rational;
using namespace ktbench::hardcore;
namespace stats = ktbench::stats;

namespace {

BitString b(const char* s) { return BitString::parse(s); }

}  // namespace

TEST_CASE("gl examples") {
  CHECK(gl(b("101"), GlSeed{{b("111"), b("100")}}) == b("01"));
  CHECK(gl(b("1101"), GlSeed{{b("0000"), b("0000"), b("0000")}}) == b("000"));
  const auto x = b("110100");
  GlSeed basis;
  for (std::size_t i = 0; i < x.size(); ++i) {
    BitString e(x.size());
    e.set(i, true);
    basis.vectors.push_back(e);
  }
  CHECK(gl(x, basis) == x);
  CHECK_THROWS_AS(gl(b("101"), GlSeed{{b("11")}}), ktbench::LengthMismatch);
}

TEST_CASE("seed serialization") {
  const GlSeed s{{b("101"), b("011")}};
  CHECK(s.to_bits() == b("101011"));
  CHECK(GlSeed::from_bits(s.to_bits(), 3).vectors == s.vectors);
  CHECK(GlSeed::from_bits(s.to_bits(), 3).k() == 2);
  CHECK_THROWS_AS(GlSeed::from_bits(b("10101"), 3), ktbench::LengthMismatch);
}

TEST_CASE("linearity in x") {
  ktbench::SeededRng rng(3);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng.below(70);
    GlSeed s;
    for (std::size_t j = 0; j < 5; ++j) s.vectors.push_back(rng.bits(n));
    const auto x = rng.bits(n);
    const auto y = rng.bits(n);
    BitString xy(n);
    for (std::size_t j = 0; j < n; ++j) xy.set(j, x[j] != y[j]);
    const auto gx = gl(x, s);
    const auto gy = gl(y, s);
    const auto gxy = gl(xy, s);
    for (std::size_t j = 0; j < 5; ++j) REQUIRE(gxy[j] == (gx[j] != gy[j]));
  }
}

TEST_CASE("uniform input makes every nonzero vector unbiased") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto source = stats::ExactDistribution::uniform(n);
    for (std::uint64_t v = 1; v < (std::uint64_t{1} << n); ++v) {
      const auto bias = gl_bias_census(source, stats::ExactDistribution::point_mass(BitString::from_uint(v, n)), 1);
      REQUIRE(bias[0] == Rational(1, 2));
    }
    const auto zero = gl_bias_census(source, stats::ExactDistribution::point_mass(BitString(n)), 1);
    CHECK(zero[0] == 0);
  }
}

TEST_CASE("point mass at zero is never one") {
  const auto source = stats::ExactDistribution::point_mass(BitString(4));
  const auto bias = gl_bias_census(source, stats::ExactDistribution::uniform(8), 2);
  CHECK(bias == std::vector<Rational>{0, 0});
}

TEST_CASE("uniform vectors") {
  const auto bias = gl_bias_census(stats::ExactDistribution::point_mass(b("0110")), stats::ExactDistribution::uniform(4), 1);
  CHECK(bias[0] == Rational(1, 2));
  const auto mixed = gl_bias_census(stats::ExactDistribution::uniform(3), stats::ExactDistribution::uniform(3), 1);
  CHECK(mixed[0] == Rational(1, 2) - Rational(1, 16));
}

TEST_CASE("generator hardcore bits at n = 4") {
  // fixed expander vectors are nonzero, so each output bit is unbiased over S_n
  const auto f = ktbench::prg::make_toy_owf("identity", 4);
  const auto profile = ktbench::prg::find_regularity(f);
  std::vector<BitString> members;
  for (auto x : profile.members) members.push_back(BitString::from_uint(x, 4));
  const auto source = stats::ExactDistribution::uniform_over(4, members);
  const auto vectors = ktbench::prg::expander_vectors(4, 16);
  const auto bias = gl_bias_census(source, stats::ExactDistribution::point_mass(vectors.to_bits()), 16);
  for (const auto& p : bias) CHECK(p == Rational(1, 2));
  CHECK_THROWS_AS(gl_bias_census(source, stats::ExactDistribution::uniform(5), 2), ktbench::LengthMismatch);
}
