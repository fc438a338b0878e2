#include "ktbench/hardcore.hpp"

#include "ktbench/errors.hpp"

namespace ktbench::hardcore {

BitString GlSeed::to_bits() const {
  BitString out;
  for (const auto& v : vectors) out.append(v);
  return out;
}

GlSeed GlSeed::from_bits(const BitString& bits, std::size_t input_bits) {
  if (input_bits == 0 ? !bits.empty() : bits.size() % input_bits != 0) {
    throw LengthMismatch("GlSeed::from_bits: length is not a multiple of the input length");
  }
  GlSeed seed;
  for (std::size_t pos = 0; input_bits != 0 && pos < bits.size(); pos += input_bits) {
    seed.vectors.push_back(bits.slice(pos, input_bits));
  }
  return seed;
}

BitString gl(const BitString& x, const GlSeed& seed) {
  BitString out;
  for (const auto& v : seed.vectors) {
    if (v.size() != x.size()) throw LengthMismatch("gl: vector length differs from |x|");
    out.push_back(inner_product(x, v));
  }
  return out;
}

std::vector<Rational> gl_bias_census(const stats::ExactDistribution& source,
                                     const stats::ExactDistribution& seeds, std::size_t k) {
  const std::size_t n = source.outcome_bits();
  if (seeds.outcome_bits() != k * n) throw LengthMismatch("gl_bias_census: seed length is not k * |x|");
  std::vector<BigInt> ones(k, 0);
  for (const auto& [s, ws] : seeds.weights()) {
    const GlSeed seed = GlSeed::from_bits(s, n);
    for (const auto& [x, wx] : source.weights()) {
      const BitString bits = gl(x, seed);
      for (std::size_t i = 0; i < k; ++i) {
        if (bits[i]) ones[i] += BigInt(wx) * ws;
      }
    }
  }
  const BigInt total = BigInt(source.total_weight()) * seeds.total_weight();
  std::vector<Rational> bias;
  bias.reserve(k);
  for (const auto& o : ones) bias.emplace_back(o, total);
  return bias;
}

}  // namespace ktbench::hardcore
