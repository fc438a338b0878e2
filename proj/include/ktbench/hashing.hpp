#pragma once

// Affine pairwise-independent hash family over GF(2^n):
//   h_{a,b}(x) = a*x + b,  seed = a || b (2n bits),
// with prefix truncation [y]_j and an exact leftover-hash-lemma check.

#include <cstdint>
#include <map>
#include <string>

#include "ktbench/bits.hpp"
#include "ktbench/stats.hpp"

namespace ktbench::hashing {

inline constexpr unsigned kMaxFieldBits = 16;

/// Moduli parsed from data/gf2_moduli.txt, keyed by degree.
const std::map<unsigned, std::uint32_t>& modulus_table();
const std::string& modulus_table_version();

/// Parses the "n: hex" text format; '#' starts a comment line.
std::map<unsigned, std::uint32_t> parse_modulus_table(const std::string& text);

class Gf2Field {
 public:
  /// Throws ConfigError for n outside 1..kMaxFieldBits.
  explicit Gf2Field(unsigned n);

  unsigned degree() const { return n_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t order() const { return std::uint32_t{1} << n_; }

  static std::uint32_t add(std::uint32_t a, std::uint32_t b) { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t acc = 0;
    const std::uint32_t top = std::uint32_t{1} << n_;
    while (b != 0) {
      if (b & 1U) acc ^= a;
      b >>= 1;
      a <<= 1;
      if (a & top) a ^= modulus_;
    }
    return acc;
  }

 private:
  unsigned n_;
  std::uint32_t modulus_;
};

struct HashSeed {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  unsigned n = 0;

  /// a || b, each n bits MSB-first.
  BitString to_bits() const;
  static HashSeed from_bits(const BitString& bits);

  friend bool operator==(const HashSeed&, const HashSeed&) = default;
};

/// a*x + b in GF(2^n). Throws LengthMismatch unless |x| = seed.n.
BitString hash(const HashSeed& seed, const BitString& x);

/// Integer fast path for enumerations.
inline std::uint32_t hash_value(const Gf2Field& field, std::uint32_t a, std::uint32_t b, std::uint32_t x) {
  return field.mul(a, x) ^ b;
}

/// First j bits of y. Throws std::out_of_range if j > |y|.
BitString truncate(const BitString& y, std::size_t j);

struct LhlResult {
  Rational measured_sd;      // SD((seed, [h(X)]_{k-d}), (seed, U_{k-d}))
  long double bound = 0;     // 2^{-d/2}
  bool holds = false;        // measured_sd <= 2^{-d/2}, decided exactly
  std::size_t out_bits = 0;  // k - d
};

/// Exact leftover-hash-lemma check for X over {0,1}^n with H_inf(X) >= k,
/// hashing to k - d bits with the full affine family over GF(2^n).
/// Throws ConfigError if H_inf(X) < k or d > k, BudgetExceeded if n > 10.
LhlResult lhl_check(const stats::ExactDistribution& x, unsigned k, unsigned d);

/// sd <= 2^{-d/2} without rounding: compares sd^2 with 2^{-d}.
bool within_half_power_bound(const Rational& sd, unsigned d);

}  // namespace ktbench::hashing
