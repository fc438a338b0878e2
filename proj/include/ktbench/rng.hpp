#pragma once

#include <cstdint>
#include <random>

#include "ktbench/bits.hpp"

namespace ktbench {

/// Seeded generator with platform-independent derived draws.
///
/// std::mt19937_64 output is fixed by the standard; the standard
/// distributions are not, so draws below a bound use rejection sampling on
/// the raw engine output.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    if ((bound & (bound - 1)) == 0) return engine_() & (bound - 1);
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  bool coin() { return (engine_() >> 63) != 0; }

  BitString bits(std::size_t n) {
    BitString out;
    while (out.size() + 64 <= n) out.append_uint(engine_(), 64);
    const std::size_t rest = n - out.size();
    if (rest > 0) out.append_uint(engine_() >> (64 - rest), rest);
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent sub-seeds from labels.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace ktbench
