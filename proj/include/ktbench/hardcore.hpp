#pragma once

#include <vector>

#include "ktbench/bits.hpp"
#include "ktbench/stats.hpp"

namespace ktbench::hardcore {

/// k inner-product vectors, each as long as the hidden input.
struct GlSeed {
  std::vector<BitString> vectors;

  std::size_t k() const { return vectors.size(); }
  /// Concatenation of the vectors (k * input_bits bits).
  BitString to_bits() const;
  static GlSeed from_bits(const BitString& bits, std::size_t input_bits);
};

/// Bit i is <x, vectors[i]> mod 2. Throws LengthMismatch on any vector whose
/// length differs from |x|.
BitString gl(const BitString& x, const GlSeed& seed);

/// Exact Pr[bit_i = 1] for each of the k output bits when x ~ source and
/// the serialized seed ~ seeds, independently.
std::vector<Rational> gl_bias_census(const stats::ExactDistribution& source,
                                     const stats::ExactDistribution& seeds, std::size_t k);

}  // namespace ktbench::hardcore
