#pragma once

// The attack turning a K^t heuristic into a distinguisher for a generator
// G: {0,1}^n -> {0,1}^m with m = n + gamma * ceil(log2 n) - c_trunc:
//
//   A(x) = 1  iff  H(x) >= m - ceil(3 gamma L / 8),   L = ceil(log2 n)
//
// plus the two counting statements it rests on, checked by exact census:
// most m-bit strings have K^t >= m - ceil(gamma L / 4), and every output of
// G has K^t < m - ceil(gamma L / 2).

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ktbench/bits.hpp"
#include "ktbench/kolmogorov.hpp"
#include "ktbench/stats.hpp"
#include "ktbench/tinyvm.hpp"

namespace ktbench::distinguisher {

using tinyvm::Steps;
using Function = std::function<BitString(const BitString&)>;
using Heuristic = std::function<std::size_t(const BitString&)>;
using Predicate = std::function<bool(const BitString&)>;

struct DistinguisherParams {
  std::size_t n = 0;          // generator seed bits
  unsigned log_n = 0;         // ceil(log2 n)
  unsigned gamma = 0;
  unsigned truncation_c = 0;  // in [0, gamma + 1]
  unsigned d = 1;             // approximation constant
  std::size_t m = 0;          // n + gamma L - c_trunc
  std::size_t beta = 0;       // ceil(gamma L / 8)
  std::size_t threshold = 0;  // m - ceil(3 gamma L / 8)
  std::size_t eq1_threshold = 0;  // m - ceil(gamma L / 4)
  std::size_t eq2_threshold = 0;  // m - ceil(gamma L / 2)
};

/// Throws ConfigError unless gamma >= max(8, 8d), c_trunc <= gamma + 1 and
/// the truncated generator still expands (m > n).
DistinguisherParams make_params(std::size_t n, unsigned gamma, unsigned truncation_c, unsigned d = 1);

/// g with its last c_trunc output bits dropped. Throws ConfigError when the
/// result would not be longer than the seed.
Function truncate_prg(Function g, std::size_t c_trunc, std::size_t seed_bits, std::size_t out_bits);

/// x -> [H(x) >= params.threshold].
Predicate build_distinguisher(Heuristic heuristic, const DistinguisherParams& params);

/// Exact Pr_P[dist = 1].
Rational acceptance(const Predicate& dist, const stats::ExactDistribution& p);
/// Exact Pr over U_bits, by enumeration (bits <= 26).
Rational acceptance_uniform(const Predicate& dist, std::size_t bits);
/// |Pr_P[dist = 1] - Pr_Q[dist = 1]|. Throws LengthMismatch on differing lengths.
Rational advantage(const Predicate& dist, const stats::ExactDistribution& p, const stats::ExactDistribution& q);

/// Exact K^t on all m-bit strings: one census of programs up to m bits with
/// the output filter; strings without such a program have K^t = m + 1.
class ExactKtHeuristic {
 public:
  ExactKtHeuristic(std::size_t m, Steps t, const kolmogorov::EnumerationOptions& options = {});

  std::size_t operator()(const BitString& x) const;
  Heuristic as_heuristic() const;

 private:
  std::size_t m_;
  std::shared_ptr<const kolmogorov::ProgramCensus> census_;
};

/// Exact K^t plus a seeded per-string offset in [-beta, beta], clamped at 0.
Heuristic approximate_heuristic(Heuristic exact, std::size_t beta, std::uint64_t seed);

/// (1 - p)^e * n^gamma <= coeff^e with e = 4: decides p >= 1 - coeff / n^{gamma/4}.
bool at_least_one_minus(const Rational& p, unsigned coeff, std::size_t n, unsigned gamma);

struct Eq1Verdict {
  long long threshold = 0;
  Rational fraction;         // Pr_x[K^t(x) >= threshold] over {0,1}^m
  long double bound = 0;     // 1 - 1/n^{gamma/4}
  bool threshold_nonpositive = false;
  bool threshold_exceeds_m = false;
  bool holds = false;
};

/// Fraction of m-bit strings with K^t >= threshold; `holds` compares it with
/// 1 - 1/n^{gamma/4}.
Eq1Verdict eq1_fraction(std::size_t m, Steps t, long long threshold, std::size_t n, unsigned gamma,
                        const kolmogorov::EnumerationOptions& options = {});
/// Threshold m - ceil(gamma L / 4).
Eq1Verdict eq1_census(std::size_t m, std::size_t n, Steps t, unsigned gamma,
                      const kolmogorov::EnumerationOptions& options = {});

struct Eq2Verdict {
  long long threshold = 0;        // outputs must have K^t below this
  std::size_t witness_limit = 0;  // and at most |s| + 9
  std::size_t seeds = 0;
  std::size_t seeds_ok = 0;
  std::size_t max_kt = 0;         // largest K^t found (0 when some seed failed)
  bool vacuous = false;           // threshold > m + 1
  bool holds = false;
};

/// For every seed s of seed_bits bits: K^t(g(s)) <= seed_bits + 9 and
/// K^t(g(s)) < threshold. g must have a fixed output length out_bits.
Eq2Verdict eq2_census_fn(const Function& g, std::size_t seed_bits, std::size_t out_bits, Steps t,
                         long long threshold, const kolmogorov::EnumerationOptions& options = {});

/// eq2_census_fn on the registered builtin with threshold m - ceil(gamma L / 2).
Eq2Verdict eq2_census(std::uint8_t builtin_id, std::size_t seed_bits, Steps t, const DistinguisherParams& params,
                      const kolmogorov::EnumerationOptions& options = {});

/// A seeded random function {0,1}^seed_bits -> {0,1}^out_bits.
Function random_function(std::size_t seed_bits, std::size_t out_bits, std::uint64_t seed);

struct TruncationRow {
  unsigned truncation_c = 0;
  std::size_t m = 0;
  std::size_t threshold = 0;
  Rational accept_uniform;
  Rational accept_generator;
  Rational advantage;
  Eq2Verdict eq2;
  bool claim_uniform = false;    // accept_uniform >= 1 - 2/n^{gamma/4}
  bool claim_generator = false;  // accept_generator == 0
  bool beats_target = false;     // advantage > 1/n^2
};

/// Runs the exact-kt distinguisher against the builtin generator with seed
/// length n for every c_trunc in [0, min(gamma + 1, registered truncations)].
std::vector<TruncationRow> truncation_sweep(std::size_t n, unsigned gamma, Steps t,
                                            const kolmogorov::EnumerationOptions& options = {});

/// One row of the sweep with an arbitrary heuristic.
TruncationRow evaluate_truncation(std::size_t n, unsigned gamma, unsigned c_trunc, Steps t, const Heuristic& heuristic,
                                  const kolmogorov::EnumerationOptions& options = {});

}  // namespace ktbench::distinguisher
