#pragma once

// Conditionally secure entropy-preserving PRG built from a regular toy OWF:
//
//   f_i(x, s1, s2)        = s1 || s2 || [h_s1(x)]_{w1(i)} || [h_s2(f(x))]_{w2(i)}
//   f'_i(x, s1, s2, sg)   = sg || f_i(x, s1, s2)
//   G(i, x, s1, s2, sg)   = f'_i(x, s1, s2, sg) || GL(x, sg)
//
// with w1(i) = i - a*L, w2(i) = s_n - i - a*L, L = ceil(log2 n), a = alpha',
// and the event E = {i = r, x in S_n} from the regularity profile.
//
// Hash seeds are 2n-bit affine GF(2^n) seeds; the GL seed holds
// k = gamma' * L vectors of n bits. The exponent c (hash_exponent) is the
// smallest c >= 1 with n' <= n^(c+1), which makes the expansion bound
// ell' - n' >= gamma * ceil(log2 n') hold by construction.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ktbench/bits.hpp"
#include "ktbench/hardcore.hpp"
#include "ktbench/hashing.hpp"
#include "ktbench/stats.hpp"

namespace ktbench::prg {

inline constexpr std::size_t kMaxToyOwfBits = 16;

/// A table-backed toy function {0,1}^n -> {0,1}^n. None of these are one-way.
struct ToyOwf {
  std::string name;
  std::size_t n = 0;
  std::shared_ptr<const std::vector<std::uint32_t>> table;

  std::uint32_t operator()(std::uint32_t x) const { return (*table)[x]; }
  BitString eval(const BitString& x) const;
};

/// identity, constant, clear-last-bit, multiply-halves, random-function,
/// random-permutation. The random ones use fixed per-(name, n) seeds.
ToyOwf make_toy_owf(const std::string& name, std::size_t n);
const std::vector<std::string>& toy_owf_names();

/// |f^{-1}(f(x))| for every x.
std::vector<std::uint64_t> preimage_census(const ToyOwf& f);

/// 2^{r-1} <= count <= 2^r, with r = 0 meaning count == 1.
bool in_regularity_bin(std::uint64_t count, unsigned r);

struct RegularityProfile {
  std::size_t n = 0;
  unsigned r = 0;
  std::vector<std::uint32_t> members;  // S_n, sorted
  Rational weight;                     // |S_n| / 2^n
  std::vector<Rational> bin_weights;   // w(0..n)

  bool contains(std::uint32_t x) const;
};

/// Smallest r maximizing w(r) = Pr_x[2^{r-1} <= |f^{-1}(f(x))| <= 2^r].
RegularityProfile find_regularity(const ToyOwf& f);

/// Every member satisfies the preimage bound for r, and weight >= 1/n.
bool profile_is_valid(const ToyOwf& f, const RegularityProfile& profile);

struct PrgParams {
  std::size_t n = 0;            // OWF input bits
  unsigned log_n = 0;           // ceil(log2 n)
  unsigned r = 0;               // regularity level
  std::size_t s_n = 0;          // <= log2 |S_n|
  unsigned alpha_prime = 0;
  unsigned gamma = 0;
  unsigned delta = 0;
  unsigned hash_exponent = 1;   // c
  unsigned gamma_prime = 0;     // (c+1) gamma + 2 alpha' + 3
  std::size_t hash_seed_bits = 0;  // per seed, 2n
  std::size_t gl_bits = 0;         // k
  std::size_t width_input = 0;     // r - alpha' L
  std::size_t width_output = 0;    // s_n - r - alpha' L
  std::size_t ell = 0;             // |f'_r output|
  std::size_t ell_prime = 0;       // ell + k
  std::size_t n_prime = 0;         // L + n + 2 * hash_seed_bits + k n

  std::size_t gl_seed_bits() const { return gl_bits * n; }
  std::size_t hashed_bits() const { return width_input + width_output; }
  /// Recomputes every derived length from n, r, s_n, alpha', gl_bits.
  void recompute_lengths();
};

/// gamma * ceil(log2 n').
std::size_t required_expansion(const PrgParams& params);
/// ell' - n' >= gamma * ceil(log2 n').
bool expansion_ok(const PrgParams& params);

/// Parameters for the profile, with s_n defaulting to n - ceil(log2 n).
/// Throws ConfigError when a truncation width would be negative or
/// s_n > log2 |S_n|.
PrgParams make_prg_params(const RegularityProfile& profile, unsigned alpha_prime, unsigned gamma,
                          unsigned delta, std::optional<std::size_t> s_n = std::nullopt);

struct SeedBundle {
  std::uint32_t i = 0;
  BitString x;
  hashing::HashSeed sigma1;
  hashing::HashSeed sigma2;
  hardcore::GlSeed sigma_gl;

  BitString to_bits(const PrgParams& params) const;
  static SeedBundle from_bits(const PrgParams& params, const BitString& bits);
};

struct EventSpec {
  std::uint32_t required_i = 0;
  const RegularityProfile* required_set = nullptr;
};

EventSpec make_event(const RegularityProfile& profile);
bool event_member(const SeedBundle& bundle, const EventSpec& event);

/// Widths used by f_i for an arbitrary i: w1 = clamp(i - alpha' L, 0, W),
/// w2 = W - w1 with W = s_n - 2 alpha' L, so |G| does not depend on i.
std::pair<std::size_t, std::size_t> widths_for(const PrgParams& params, std::uint32_t i);

BitString dense_f(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params,
                  const BitString& x, const hashing::HashSeed& sigma1, const hashing::HashSeed& sigma2);

BitString f_prime(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params,
                  const BitString& x, const hashing::HashSeed& sigma1, const hashing::HashSeed& sigma2,
                  const hardcore::GlSeed& sigma_gl);

/// G(i, x, s1, s2, sg), of length params.ell_prime for every i.
BitString cond_ep_prg(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params,
                      const SeedBundle& bundle);

// --- rate-1 padding and the all-lengths wrapper ---

struct Rate1Params {
  std::size_t n = 0;
  unsigned c0 = 1;
  unsigned delta_prime = 4;        // 4 c0
  unsigned gamma_prime_outer = 2;  // 2 c0 gamma
  std::size_t s1_bits = 0;         // ceil(n^{1/(2 c0)})

  static Rate1Params make(std::size_t n, unsigned c0, unsigned gamma);
  std::size_t s0_bits() const { return n - s1_bits; }
};

/// s0 || inner(s1). Throws ConfigError on an invalid split or |s| != n.
BitString rate1_pad(const std::function<BitString(const BitString&)>& inner, const BitString& s,
                    const Rate1Params& split);

/// A generator defined on a sorted set of structured input lengths.
struct StructuredFamily {
  std::vector<std::size_t> lengths;
  std::function<BitString(const BitString&)> eval;
};

/// Splits x' = x || y with |x| the longest structured length <= |x'| and
/// returns eval(x) || y. Throws ConfigError below the minimum length.
BitString all_lengths_wrapper(const StructuredFamily& g, const BitString& x_prime);

// --- the registered builtin generator ---

/// Fixed nonzero vectors for the linear expander at seed length n.
hardcore::GlSeed expander_vectors(std::size_t n, std::size_t k);

/// s || GL(s, V_n) with k = gamma * ceil(log2 |s|) fixed vectors. Injective,
/// so it preserves all entropy under the trivial event E_n = {0,1}^n.
BitString linear_expander(const BitString& s, int gamma);

// --- exact censuses ---

struct DensityReport {
  Rational sd_real_uniform;  // SD(f'_r(X, U), U_ell)
  Rational sd_real_hyb1;     // SD(REAL, HYB_1)
  Rational sd_hyb1_hyb2;     // SD(HYB_1, HYB_2)
  long double density_bound = 0;  // 3 / n^{alpha'/2}
  long double hyb1_bound = 0;     // 2 / n^{alpha'/2}
  long double hyb2_bound = 0;     // 1 / n^{alpha'/2}
  bool density_ok = false;
  bool hyb1_ok = false;
  bool hyb2_ok = false;
};

/// Exact over x in S_n and all hash seeds. The GL seed is an independent
/// uniform prefix of REAL and of the uniform string, so it cancels from every
/// distance and is not enumerated.
DensityReport density_census(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params);

/// sd <= coeff / n^{alpha'/2}, decided exactly as sd^2 n^alpha' <= coeff^2.
bool within_poly_bound(const Rational& sd, unsigned coeff, std::size_t n, unsigned alpha_prime);

/// Distribution of s1 || s2 || [h_s1(x)]_w1 || [h_s2(f(x))]_w2 over x in S_n
/// and all seeds, built by direct pushforward.
stats::ExactDistribution dense_f_distribution(const ToyOwf& f, const RegularityProfile& profile,
                                              const PrgParams& params);

struct EntropyReport {
  long double h_generator = 0;  // H(G(U_{n'} | E_{n'}))
  long double h_f_prime = 0;    // H(f'_r(X_n, U))
  std::size_t ell = 0;
  std::size_t n_prime = 0;
  long double entropy_loss = 0;  // n' - H(G)
  long double loss_bound = 0;    // (2 alpha' + 4) ceil(log2 n')
  bool entropy_ok = false;       // H(G) >= ell - 2
  bool loss_ok = false;
};

/// Exact entropies, with the GL seed handled analytically: H(G | GL seed = M)
/// only depends on ker M, so the census sums over the subspaces of GF(2)^n
/// weighted by the fraction of k x n matrices with that kernel.
EntropyReport entropy_census(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params);

/// Subspaces of GF(2)^n as membership masks over the 2^n vectors (n <= 6).
std::vector<std::uint64_t> subspaces(std::size_t n);

/// Fraction of k x n GF(2) matrices whose kernel is a fixed subspace of the
/// given dimension.
long double kernel_probability(std::size_t n, std::size_t k, std::size_t kernel_dim);

struct SampledReport {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  double hoeffding_epsilon = 0;
  double tail_sd_estimate = 0;           // empirical SD of the hashed tail to uniform
  std::vector<double> gl_bit_frequency;  // empirical Pr[GL bit = 1]
};

/// Seeded Monte Carlo over the event E for parameters too large to enumerate.
SampledReport sampled_census(const ToyOwf& f, const RegularityProfile& profile, const PrgParams& params,
                             std::uint64_t seed, std::uint64_t samples);

}  // namespace ktbench::prg
