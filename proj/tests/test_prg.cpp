#include <doctest.h>

#include <cmath>
#include <numeric>

#include "ktbench/prg.hpp"
#include "ktbench/rng.hpp"

using ktbench::BitString;
using ktbench::Rational;
using namespace ktbench::prg;
namespace stats = ktbench::stats;
using ktbench::hashing::HashSeed;
using ktbench::hardcore::GlSeed;

namespace {

// x with its low `bits` bits cleared: exactly 2^bits preimages everywhere.
ToyOwf clear_low(std::size_t n, unsigned bits) {
  std::vector<std::uint32_t> table(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < table.size(); ++x) table[x] = x & ~((1U << bits) - 1);
  return ToyOwf{"clear-low", n, std::make_shared<const std::vector<std::uint32_t>>(std::move(table))};
}

SeedBundle random_bundle(const PrgParams& p, ktbench::SeededRng& rng) {
  return SeedBundle::from_bits(p, rng.bits(p.n_prime));
}

// REAL and HYB_1 built literally: HYB_1 replaces the first hashed block by
// fresh uniform bits.
std::pair<stats::ExactDistribution, stats::ExactDistribution> real_and_hyb1(const ToyOwf& f,
                                                                            const RegularityProfile& profile,
                                                                            const PrgParams& p) {
  const auto n = static_cast<unsigned>(p.n);
  const std::uint32_t order = 1U << n;
  const std::size_t bits = 4 * p.n + p.hashed_bits();
  stats::ExactDistribution real(bits), hyb1(bits);
  for (auto x : profile.members) {
    const auto xb = BitString::from_uint(x, n);
    for (std::uint32_t a1 = 0; a1 < order; ++a1) {
      for (std::uint32_t b1 = 0; b1 < order; ++b1) {
        for (std::uint32_t a2 = 0; a2 < order; ++a2) {
          for (std::uint32_t b2 = 0; b2 < order; ++b2) {
            const HashSeed s1{a1, b1, n}, s2{a2, b2, n};
            real.add(dense_f(f, profile, p, xb, s1, s2), std::uint64_t{1} << p.width_input);
            const auto tail = ktbench::hashing::truncate(ktbench::hashing::hash(s2, f.eval(xb)), p.width_output);
            for (std::uint32_t u = 0; u < (1U << p.width_input); ++u) {
              hyb1.add(s1.to_bits() + s2.to_bits() + BitString::from_uint(u, p.width_input) + tail);
            }
          }
        }
      }
    }
  }
  return {real, hyb1};
}

}  // namespace

TEST_CASE("toy OWF registry") {
  CHECK(toy_owf_names().size() == 6);
  for (const auto& name : toy_owf_names()) {
    const auto a = make_toy_owf(name, 6);
    const auto b = make_toy_owf(name, 6);
    CHECK(*a.table == *b.table);
    CHECK(a.eval(BitString::from_uint(5, 6)).size() == 6);
  }
  CHECK_THROWS_AS(make_toy_owf("sha256", 4), ktbench::ConfigError);
  CHECK_THROWS_AS(make_toy_owf("identity", 17), ktbench::ConfigError);
  CHECK_THROWS_AS(make_toy_owf("identity", 4).eval(BitString(3)), ktbench::LengthMismatch);
  auto perm = *make_toy_owf("random-permutation", 8).table;
  std::sort(perm.begin(), perm.end());
  std::vector<std::uint32_t> ids(256);
  std::iota(ids.begin(), ids.end(), 0U);
  CHECK(perm == ids);
  // multiply-halves: high half times low half
  CHECK(make_toy_owf("multiply-halves", 6)(0b011101) == 3 * 5);
}

TEST_CASE("regularity examples") {
  const auto id = find_regularity(make_toy_owf("identity", 5));
  CHECK(id.r == 0);
  CHECK(id.members.size() == 32);
  CHECK(id.weight == 1);
  const auto constant = find_regularity(make_toy_owf("constant", 5));
  CHECK(constant.r == 5);
  CHECK(constant.weight == 1);
  const auto clear = find_regularity(make_toy_owf("clear-last-bit", 5));
  CHECK(clear.r == 1);
  CHECK(clear.weight == 1);
  CHECK(in_regularity_bin(1, 0));
  CHECK_FALSE(in_regularity_bin(2, 0));
  CHECK(in_regularity_bin(3, 2));
  CHECK(in_regularity_bin(4, 2));
  CHECK_FALSE(in_regularity_bin(5, 2));
}

TEST_CASE("regularity profiles of every toy OWF up to n = 12") {
  for (const auto& name : toy_owf_names()) {
    for (std::size_t n = 2; n <= 12; ++n) {
      const auto f = make_toy_owf(name, n);
      const auto profile = find_regularity(f);
      const auto counts = preimage_census(f);
      CAPTURE(name);
      CAPTURE(n);
      REQUIRE(profile_is_valid(f, profile));
      CHECK(profile.weight * n >= 1);
      std::size_t best = 0;
      for (std::size_t r = 0; r < profile.bin_weights.size(); ++r) {
        if (profile.bin_weights[r] > profile.bin_weights[best]) best = r;
      }
      CHECK(best == profile.r);
      for (std::uint32_t x = 0; x < counts.size(); ++x) {
        CHECK(profile.contains(x) == in_regularity_bin(counts[x], profile.r));
      }
    }
  }
}

TEST_CASE("parameters at n = 4, identity, gamma = 2") {
  const auto profile = find_regularity(make_toy_owf("identity", 4));
  const auto p = make_prg_params(profile, 0, 2, 1);
  CHECK(p.log_n == 2);
  CHECK(p.s_n == 2);
  CHECK(p.hash_exponent == 3);
  CHECK(p.gamma_prime == 11);
  CHECK(p.gl_bits == 22);
  CHECK(p.hash_seed_bits == 8);
  CHECK(p.width_input == 0);
  CHECK(p.width_output == 2);
  CHECK(p.n_prime == 110);
  CHECK(p.ell == 106);
  CHECK(p.ell_prime == 128);
  CHECK(required_expansion(p) == 14);
  CHECK(expansion_ok(p));
  CHECK(ktbench::BigInt(p.n_prime) <= boost::multiprecision::pow(ktbench::BigInt(4), p.hash_exponent + 1));
  CHECK(ktbench::BigInt(p.n_prime) > boost::multiprecision::pow(ktbench::BigInt(4), p.hash_exponent));
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(make_prg_params(find_regularity(make_toy_owf("constant", 4)), 0, 2, 1), ktbench::ConfigError);
  const auto id = find_regularity(make_toy_owf("identity", 4));
  CHECK_THROWS_AS(make_prg_params(id, 1, 2, 1), ktbench::ConfigError);
  CHECK_THROWS_AS(make_prg_params(id, 0, 0, 1), ktbench::ConfigError);
  CHECK_THROWS_AS(make_prg_params(id, 0, 2, 1, 5), ktbench::ConfigError);
  CHECK_THROWS_AS(make_prg_params(find_regularity(make_toy_owf("identity", 1)), 0, 2, 1), ktbench::ConfigError);
}

TEST_CASE("expansion holds for every feasible configuration") {
  for (const auto& name : toy_owf_names()) {
    for (std::size_t n = 2; n <= 12; ++n) {
      const auto profile = find_regularity(make_toy_owf(name, n));
      for (unsigned gamma = 1; gamma <= 8; ++gamma) {
        for (unsigned ap = 0; ap <= 1; ++ap) {
          try {
            const auto p = make_prg_params(profile, ap, gamma, 1);
            CHECK(expansion_ok(p));
            CHECK(p.ell_prime == p.ell + p.gl_bits);
          } catch (const ktbench::ConfigError&) {
          }
        }
      }
    }
  }
}

TEST_CASE("seed bundles") {
  const auto f = make_toy_owf("random-function", 4);
  const auto profile = find_regularity(f);
  const auto p = make_prg_params(profile, 0, 2, 1);
  ktbench::SeededRng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto bits = rng.bits(p.n_prime);
    const auto bundle = SeedBundle::from_bits(p, bits);
    CHECK(bundle.to_bits(p) == bits);
    CHECK(bundle.sigma_gl.k() == p.gl_bits);
  }
  CHECK_THROWS_AS(SeedBundle::from_bits(p, rng.bits(p.n_prime - 1)), ktbench::LengthMismatch);
}

TEST_CASE("events") {
  const auto f = make_toy_owf("random-function", 4);
  const auto profile = find_regularity(f);
  REQUIRE(profile.members.size() < 16);
  const auto p = make_prg_params(profile, 0, 2, 1, 1);
  const auto event = make_event(profile);
  ktbench::SeededRng rng(1);
  auto bundle = random_bundle(p, rng);
  bundle.i = profile.r;
  bundle.x = BitString::from_uint(profile.members.front(), 4);
  CHECK(event_member(bundle, event));
  bundle.i = profile.r + 1;
  CHECK_FALSE(event_member(bundle, event));
  std::uint64_t outside = 0;
  while (profile.contains(static_cast<std::uint32_t>(outside))) ++outside;
  bundle.i = profile.r;
  bundle.x = BitString::from_uint(outside, 4);
  CHECK_FALSE(event_member(bundle, event));

  // mass over uniform (i, x); the remaining seed fields do not matter
  std::uint64_t hits = 0;
  for (std::uint32_t i = 0; i < (1U << p.log_n); ++i) {
    for (std::uint32_t x = 0; x < 16; ++x) {
      bundle.i = i;
      bundle.x = BitString::from_uint(x, 4);
      hits += event_member(bundle, event);
    }
  }
  CHECK(Rational(hits, 16U << p.log_n) == profile.weight / (1U << p.log_n));
}

TEST_CASE("dense function by hand") {
  const auto f = make_toy_owf("clear-last-bit", 4);
  const auto profile = find_regularity(f);
  const auto p = make_prg_params(profile, 0, 2, 1);
  REQUIRE(p.width_input == 1);
  REQUIRE(p.width_output == 1);
  const HashSeed one{1, 0, 4};
  const auto x = BitString::parse("1011");
  const auto out = dense_f(f, profile, p, x, one, one);
  CHECK(out.size() == 2 * p.hash_seed_bits + p.width_input + p.width_output);
  CHECK(out == one.to_bits() + one.to_bits() + BitString::parse("1") + BitString::parse("1"));
  const HashSeed shift{1, 0b1000, 4};
  CHECK(dense_f(f, profile, p, x, one, shift).suffix_from(16) == BitString::parse("10"));
}

TEST_CASE("widths for arbitrary i") {
  const auto profile = find_regularity(make_toy_owf("clear-last-bit", 8));
  const auto p = make_prg_params(profile, 0, 2, 1);
  for (std::uint32_t i = 0; i < (1U << p.log_n); ++i) {
    const auto [w1, w2] = widths_for(p, i);
    CHECK(w1 + w2 == p.hashed_bits());
  }
  CHECK(widths_for(p, p.r) == std::make_pair(p.width_input, p.width_output));
}

TEST_CASE("generator output") {
  const auto f = make_toy_owf("clear-last-bit", 4);
  const auto profile = find_regularity(f);
  const auto p = make_prg_params(profile, 0, 2, 1);
  ktbench::SeededRng rng(12);
  for (int t = 0; t < 50; ++t) {
    const auto bundle = random_bundle(p, rng);
    const auto g = cond_ep_prg(f, profile, p, bundle);
    CHECK(g.size() == p.ell_prime);
    if (bundle.i == profile.r) {
      CHECK(g == f_prime(f, profile, p, bundle.x, bundle.sigma1, bundle.sigma2, bundle.sigma_gl) +
                     ktbench::hardcore::gl(bundle.x, bundle.sigma_gl));
    }
  }
  auto bad = random_bundle(p, rng);
  bad.sigma_gl.vectors.pop_back();
  CHECK_THROWS_AS(cond_ep_prg(f, profile, p, bad), ktbench::LengthMismatch);
}

TEST_CASE("linear expander") {
  ktbench::SeededRng rng(4);
  for (std::size_t n : {1, 2, 5, 8, 31, 64, 65, 90}) {
    const auto s = rng.bits(n);
    const auto out = linear_expander(s, 8);
    CHECK(out.size() == n + 8 * ktbench::ceil_log2(n));
    CHECK(out.prefix(n) == s);
    CHECK(out == s + ktbench::hardcore::gl(s, expander_vectors(n, 8 * ktbench::ceil_log2(n))));
  }
  for (const auto& v : expander_vectors(6, 30).vectors) CHECK(v.popcount() > 0);
}

TEST_CASE("density census matches literal REAL and HYB_1 distributions") {
  struct Case {
    ToyOwf f;
    unsigned alpha_prime;
    std::optional<std::size_t> s_n;
  };
  const std::vector<Case> cases = {
      {make_toy_owf("identity", 4), 0, std::nullopt},
      {make_toy_owf("clear-last-bit", 4), 0, std::nullopt},
      {make_toy_owf("random-function", 4), 0, 1},
      {clear_low(4, 2), 1, 4},
  };
  for (const auto& c : cases) {
    const auto profile = find_regularity(c.f);
    const auto p = make_prg_params(profile, c.alpha_prime, 2, 1, c.s_n);
    const auto report = density_census(c.f, profile, p);
    const auto [real, hyb1] = real_and_hyb1(c.f, profile, p);
    CAPTURE(c.f.name);
    CHECK(report.sd_real_uniform == stats::sd_to_uniform(real));
    CHECK(report.sd_real_uniform == stats::sd_to_uniform(dense_f_distribution(c.f, profile, p)));
    CHECK(report.sd_real_hyb1 == stats::sd(real, hyb1));
    CHECK(report.sd_hyb1_hyb2 == stats::sd_to_uniform(hyb1));
    CHECK(report.sd_real_uniform <= report.sd_real_hyb1 + report.sd_hyb1_hyb2);
    CHECK(report.density_ok);
    CHECK(report.hyb1_ok);
    CHECK(report.hyb2_ok);
  }
}

TEST_CASE("density values at n = 4, identity") {
  const auto f = make_toy_owf("identity", 4);
  const auto profile = find_regularity(f);
  const auto report = density_census(f, profile, make_prg_params(profile, 0, 2, 1));
  CHECK(report.sd_real_uniform == Rational(3, 64));
  CHECK(report.sd_real_hyb1 == 0);
  CHECK(report.sd_hyb1_hyb2 == Rational(3, 64));
  CHECK(report.density_bound == doctest::Approx(3));
}

TEST_CASE("exact polynomial bound comparison") {
  CHECK(within_poly_bound(Rational(3, 2), 3, 4, 1));
  CHECK_FALSE(within_poly_bound(Rational(3, 2) + Rational(1, 1000), 3, 4, 1));
  CHECK(within_poly_bound(Rational(3, 16), 3, 4, 4));
  CHECK(within_poly_bound(Rational(1), 1, 9, 0));
}

TEST_CASE("subspaces and kernel probabilities") {
  const std::vector<std::size_t> counts = {1, 2, 5, 16, 67, 374, 2825};
  for (std::size_t n = 0; n <= 6; ++n) CHECK(subspaces(n).size() == counts[n]);
  CHECK_THROWS_AS(subspaces(7), ktbench::BudgetExceeded);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (std::size_t k = 0; k <= 8; ++k) {
      long double sum = 0;
      for (auto s : subspaces(n)) {
        sum += kernel_probability(n, k, std::countr_zero(static_cast<unsigned>(std::popcount(s))));
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  // brute force over all 2 x 3 matrices
  const std::size_t n = 3, k = 2;
  for (auto space : subspaces(n)) {
    std::uint64_t hits = 0;
    for (std::uint32_t m = 0; m < (1U << (n * k)); ++m) {
      std::uint64_t kernel = 0;
      for (std::uint32_t v = 0; v < (1U << n); ++v) {
        const bool zero = (std::popcount(v & (m & 7U)) % 2 == 0) && (std::popcount(v & (m >> 3)) % 2 == 0);
        if (zero) kernel |= std::uint64_t{1} << v;
      }
      hits += kernel == space;
    }
    const auto dim = std::countr_zero(static_cast<unsigned>(std::popcount(space)));
    CHECK(kernel_probability(n, k, dim) == doctest::Approx(static_cast<double>(hits) / 64));
  }
}

TEST_CASE("entropy census matches brute force at n = 3") {
  for (const char* name : {"identity", "clear-last-bit", "random-function"}) {
    const auto f = make_toy_owf(name, 3);
    const auto profile = find_regularity(f);
    auto p = make_prg_params(profile, 0, 2, 1, 1);
    p.gl_bits = 2;
    p.recompute_lengths();
    const auto report = entropy_census(f, profile, p);

    stats::ExactDistribution g(p.ell_prime), fp(p.ell);
    const std::uint32_t order = 8;
    for (auto x : profile.members) {
      const auto xb = BitString::from_uint(x, 3);
      for (std::uint32_t a1 = 0; a1 < order; ++a1) {
        for (std::uint32_t b1 = 0; b1 < order; ++b1) {
          for (std::uint32_t a2 = 0; a2 < order; ++a2) {
            for (std::uint32_t b2 = 0; b2 < order; ++b2) {
              for (std::uint32_t m = 0; m < 64; ++m) {
                const auto gl = GlSeed::from_bits(BitString::from_uint(m, 6), 3);
                const auto out = f_prime(f, profile, p, xb, {a1, b1, 3}, {a2, b2, 3}, gl);
                fp.add(out);
                g.add(out + ktbench::hardcore::gl(xb, gl));
              }
            }
          }
        }
      }
    }
    CAPTURE(name);
    CHECK(report.h_generator == doctest::Approx(static_cast<double>(stats::shannon_entropy(g))).epsilon(1e-12));
    CHECK(report.h_f_prime == doctest::Approx(static_cast<double>(stats::shannon_entropy(fp))).epsilon(1e-12));
  }
}

TEST_CASE("entropy at n = 4, identity") {
  const auto f = make_toy_owf("identity", 4);
  const auto profile = find_regularity(f);
  const auto p = make_prg_params(profile, 0, 2, 1);
  const auto r = entropy_census(f, profile, p);
  CHECK(r.entropy_ok);
  CHECK(r.loss_ok);
  CHECK(r.h_generator >= 106 - 2);
  CHECK(r.h_generator <= r.n_prime - p.log_n + 1e-9);
  CHECK(r.h_generator >= r.h_f_prime);
  CHECK(r.h_f_prime == doctest::Approx(105.875));
  CHECK(r.loss_bound == 4 * 7);
  CHECK_THROWS_AS(entropy_census(make_toy_owf("identity", 5), find_regularity(make_toy_owf("identity", 5)),
                                 make_prg_params(find_regularity(make_toy_owf("identity", 5)), 0, 2, 1)),
                  ktbench::BudgetExceeded);
}

TEST_CASE("rate-1 padding") {
  const auto split = Rate1Params::make(12, 1, 3);
  CHECK(split.s1_bits == 4);
  CHECK(split.s0_bits() + split.s1_bits == 12);
  CHECK(split.delta_prime == 4);
  CHECK(split.gamma_prime_outer == 6);
  CHECK(Rate1Params::make(16, 2, 1).s1_bits == 2);
  CHECK(Rate1Params::make(17, 2, 1).s1_bits == 3);
  CHECK_THROWS_AS(Rate1Params::make(12, 0, 1), ktbench::ConfigError);

  const std::size_t pad = split.gamma_prime_outer * ktbench::ceil_log2(split.s1_bits);
  auto zeros = [pad](const BitString& s1) { return s1 + BitString(pad); };
  const auto s = BitString::parse("101100111010");
  const auto out = rate1_pad(zeros, s, split);
  CHECK(out == s + BitString(pad));
  CHECK(out.size() - s.size() == pad);
  CHECK_THROWS_AS(rate1_pad(zeros, BitString(11), split), ktbench::ConfigError);
  auto broken = split;
  broken.s1_bits = 13;
  CHECK_THROWS_AS(rate1_pad(zeros, s, broken), ktbench::ConfigError);
}

TEST_CASE("rate-1 padding loses exactly the inner entropy") {
  const auto split = Rate1Params::make(12, 1, 2);
  REQUIRE(split.s1_bits == 4);
  // a lossy inner map: clear the last bit, then expand
  auto inner = [](const BitString& s1) {
    auto t = s1;
    t.set(t.size() - 1, false);
    return linear_expander(t, 2);
  };
  const auto u4 = stats::ExactDistribution::uniform(4);
  const auto inner_out = stats::exact_output_distribution(inner, u4, 8);
  const auto outer_out = stats::exact_output_distribution(
      [&](const BitString& s) { return rate1_pad(inner, s, split); }, stats::ExactDistribution::uniform(12), 16);
  const auto inner_loss = 4 - stats::shannon_entropy(inner_out);
  const auto outer_loss = 12 - stats::shannon_entropy(outer_out);
  CHECK(inner_loss == doctest::Approx(1.0));
  CHECK(outer_loss == doctest::Approx(static_cast<double>(inner_loss)).epsilon(1e-12));
}

TEST_CASE("all-lengths wrapper") {
  const StructuredFamily family{{5, 8}, [](const BitString& x) { return x + BitString::parse("11"); }};
  const auto x5 = BitString::parse("10101");
  CHECK(all_lengths_wrapper(family, x5) == x5 + BitString::parse("11"));
  CHECK(all_lengths_wrapper(family, BitString::parse("101010")) == BitString::parse("10101" "11" "0"));
  CHECK(all_lengths_wrapper(family, BitString::parse("1010101")) == BitString::parse("10101" "11" "01"));
  CHECK(all_lengths_wrapper(family, BitString::parse("10101011")) == BitString::parse("10101011" "11"));
  CHECK_THROWS_AS(all_lengths_wrapper(family, BitString::parse("1010")), ktbench::ConfigError);
  // census: the wrapper is injective whenever the family is
  std::set<BitString> images;
  for (std::uint32_t v = 0; v < 512; ++v) images.insert(all_lengths_wrapper(family, BitString::from_uint(v, 9)));
  CHECK(images.size() == 512);
}

TEST_CASE("sampled census") {
  const auto f = make_toy_owf("random-permutation", 8);
  const auto profile = find_regularity(f);
  const auto p = make_prg_params(profile, 0, 2, 1);
  const auto a = sampled_census(f, profile, p, 3, 20000);
  const auto b = sampled_census(f, profile, p, 3, 20000);
  CHECK(a.tail_sd_estimate == b.tail_sd_estimate);
  CHECK(a.gl_bit_frequency == b.gl_bit_frequency);
  CHECK(a.gl_bit_frequency.size() == p.gl_bits);
  for (double q : a.gl_bit_frequency) CHECK(std::fabs(q - 0.5) < 0.5 / 16 + a.hoeffding_epsilon);
  CHECK_THROWS_AS(sampled_census(f, profile, p, 3, 0), ktbench::ConfigError);
}
