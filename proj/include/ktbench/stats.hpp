#pragma once

// Exact finite distributions over fixed-length bitstrings.
//
// Probabilities are exact: a distribution stores nonnegative integer weights
// and their total, so Pr[v] = weight(v) / total. Statistical distances come
// back as exact rationals. Entropies are long double; callers compare them
// with kEntropySlack.

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ktbench/bits.hpp"
#include "ktbench/errors.hpp"
#include "ktbench/rng.hpp"

namespace ktbench {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact power of two 2^e as a rational (e may be negative).
Rational pow2(int e);

}  // namespace ktbench

namespace ktbench::stats {

inline constexpr long double kEntropySlack = 1e-9L;

class ExactDistribution {
 public:
  explicit ExactDistribution(std::size_t outcome_bits) : outcome_bits_(outcome_bits) {}

  static ExactDistribution point_mass(const BitString& x);
  /// Explicit uniform distribution over {0,1}^bits; refuses bits > 24.
  static ExactDistribution uniform(std::size_t bits);
  /// Uniform over the given outcomes (duplicates add weight).
  static ExactDistribution uniform_over(std::size_t bits, const std::vector<BitString>& support);

  /// Adds `weight` to outcome x. Throws LengthMismatch on a wrong length.
  void add(const BitString& x, std::uint64_t weight = 1);

  std::size_t outcome_bits() const { return outcome_bits_; }
  std::uint64_t total_weight() const { return total_; }
  std::size_t support_size() const { return weights_.size(); }
  std::uint64_t weight(const BitString& x) const;
  Rational probability(const BitString& x) const;
  std::uint64_t max_weight() const;

  const std::unordered_map<BitString, std::uint64_t, BitStringHash>& weights() const { return weights_; }
  /// Support sorted by outcome (length, then lexicographic).
  std::vector<std::pair<BitString, std::uint64_t>> sorted() const;

  /// CSV rows "outcome_hex,numerator,denominator" with reduced fractions.
  void write_csv(std::ostream& os) const;

 private:
  std::size_t outcome_bits_;
  std::uint64_t total_ = 0;
  std::unordered_map<BitString, std::uint64_t, BitStringHash> weights_;
};

/// Exact statistical distance, 1/2 sum |P(v) - Q(v)|.
Rational sd(const ExactDistribution& p, const ExactDistribution& q);

/// Exact statistical distance to the uniform distribution on
/// {0,1}^outcome_bits without materializing it.
Rational sd_to_uniform(const ExactDistribution& p);

long double shannon_entropy(const ExactDistribution& p);
long double min_entropy(const ExactDistribution& p);

/// Exact test of H_inf(P) >= k, i.e. max weight * 2^k <= total.
bool min_entropy_at_least(const ExactDistribution& p, unsigned k);

struct SdEntropyVerdict {
  Rational distance;          // SD(P, U_n)
  Rational premise_bound;     // 1/n^2
  long double entropy = 0;    // H(P)
  bool premise = false;       // distance <= 1/n^2
  bool conclusion = false;    // entropy >= n - 2 (with kEntropySlack)
  bool implication = false;   // premise => conclusion
};

/// SD-to-entropy check: SD(P, U_n) <= 1/n^2 implies H(P) >= n - 2.
/// Requires n = outcome_bits >= 4.
SdEntropyVerdict sd_entropy_lemma_check(const ExactDistribution& p);

/// Exact pushforward of `input` under fn. Refuses supports above max_support.
template <class Fn>
ExactDistribution exact_output_distribution(Fn&& fn, const ExactDistribution& input, std::size_t out_bits,
                                            std::size_t max_support = std::size_t{1} << 24) {
  if (input.support_size() > max_support) {
    throw BudgetExceeded("exact_output_distribution: input support exceeds threshold");
  }
  ExactDistribution out(out_bits);
  for (const auto& [x, w] : input.weights()) out.add(fn(x), w);
  return out;
}

struct SampledDistribution {
  ExactDistribution empirical;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  double hoeffding_epsilon = 0;  // sqrt(ln(2/0.01) / (2 count)), 99% confidence
};

double hoeffding_epsilon(std::uint64_t count);

/// Draws `count` outcomes from sampler(rng) with a fresh SeededRng(seed).
template <class Sampler>
SampledDistribution sampled_distribution(Sampler&& sampler, std::uint64_t seed, std::uint64_t count,
                                         std::size_t out_bits) {
  if (count == 0) throw ConfigError("sampled_distribution: count must be >= 1");
  SeededRng rng(seed);
  SampledDistribution out{ExactDistribution(out_bits), seed, count, hoeffding_epsilon(count)};
  for (std::uint64_t i = 0; i < count; ++i) out.empirical.add(sampler(rng));
  return out;
}

/// Convenience: all strings of a given width, as outcomes of uniform().
std::vector<BitString> all_strings(std::size_t bits);

}  // namespace ktbench::stats
