#pragma once

// The K^t-based weak-OWF candidate
//
//   f(ell || pi') = ell || U(pi'[0, ell), 1^t(n))
//
// with |ell| = ceil(log2(n+c)) and |pi'| = n + c. The ell field holds
// ell - 1 in binary, so every length 1..n+c is encodable even when n+c is a
// power of two; field values past n+c are clamped to n+c. Timeouts and
// malformed prefixes map to a reserved bottom output, so f is total.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>

#include "ktbench/bits.hpp"
#include "ktbench/kolmogorov.hpp"
#include "ktbench/stats.hpp"
#include "ktbench/tinyvm.hpp"

namespace ktbench::owf {

using tinyvm::Steps;

/// t(n). Names accepted by parse_schedule: "4n", "n^2", or a decimal constant.
struct TSchedule {
  std::string name = "64";
  std::function<Steps(std::size_t)> fn = [](std::size_t) -> Steps { return 64; };

  Steps operator()(std::size_t n) const { return fn(n); }
};

TSchedule parse_schedule(const std::string& name);

struct OwfParams {
  std::size_t n = 0;
  std::size_t c = 1;  // machine literal overhead
  Steps t = 64;
  const tinyvm::MachineConfig* machine = nullptr;

  std::size_t ell_bits() const { return ceil_log2(n + c); }
  std::size_t pi_bits() const { return n + c; }
  std::size_t input_bits() const { return n + c + ell_bits(); }
  const tinyvm::MachineConfig& machine_or_default() const {
    return machine != nullptr ? *machine : tinyvm::default_machine();
  }
};

OwfParams make_owf_params(std::size_t n, const TSchedule& schedule,
                          const tinyvm::MachineConfig& machine = tinyvm::default_machine());

struct OwfInput {
  BitString ell;       // ell_bits() bits
  BitString pi_prime;  // n + c bits

  /// Program length selected by the ell field, in 1..n+c.
  std::size_t length(const OwfParams& params) const;
  BitString to_bits() const { return ell + pi_prime; }
  static OwfInput from_bits(const OwfParams& params, const BitString& bits);
};

struct OwfOutput {
  std::size_t ell = 0;          // 1..n+c
  std::optional<BitString> y;   // nullopt is the bottom output

  /// (ell - 1) || 0 for bottom, (ell - 1) || 1 || y otherwise.
  BitString to_bits(const OwfParams& params) const;

  friend bool operator==(const OwfOutput&, const OwfOutput&) = default;
};

OwfOutput eval_f(const OwfParams& params, const OwfInput& input);

/// Largest n whose input length n + c + ceil(log2(n+c)) fits in |x'|.
/// Throws ConfigError when no n >= 1 fits.
std::size_t structured_n(std::size_t input_bits, std::size_t c = 1);

/// Truncates x' to the longest valid input length and applies f, serialized.
BitString eval_f_padded(const BitString& x_prime, const TSchedule& schedule,
                        const tinyvm::MachineConfig& machine = tinyvm::default_machine());

/// Returns a preimage of the output or nullopt.
using Inverter = std::function<std::optional<OwfInput>(const OwfOutput&)>;

/// Lexicographically smallest preimage over the whole input space.
class BruteForceInverter {
 public:
  explicit BruteForceInverter(const OwfParams& params);

  std::optional<OwfInput> operator()(const OwfOutput& y) const;
  Inverter as_inverter() const;

  const OwfParams& params() const { return params_; }
  /// Preimage counts of f over all inputs, keyed by serialized output.
  const std::map<BitString, std::uint64_t>& image() const { return image_; }

 private:
  OwfParams params_;
  std::unordered_map<BitString, std::uint64_t, BitStringHash> first_preimage_;
  std::map<BitString, std::uint64_t> image_;
};

/// Returns nullopt on outputs whose serialization is in deny_set, defers otherwise.
Inverter make_failing_inverter(Inverter base, std::set<BitString> deny_set, const OwfParams& params);

/// Each image element denied independently with probability 2^-j, with j
/// drawn in 1..6 from the seed.
std::set<BitString> random_deny_set(const BruteForceInverter& inverter, std::uint64_t seed);

struct HeuristicAnswer {
  std::size_t k = 0;
  std::optional<tinyvm::Program> program;
};

/// Queries i || z for i = 1..n+c and accepts the first i whose returned
/// pi' has an i-bit prefix printing z within t steps. Falls back to
/// (|z| + c, nullopt).
HeuristicAnswer heuristic_from_inverter(const Inverter& inverter, const BitString& z, const OwfParams& params);

struct ReductionReport {
  std::size_t n = 0;
  std::size_t c = 1;
  Steps t = 0;
  std::string p_target = "p(n)";
  std::string q_target;             // 2^{2c+3} n p(n)^2
  Rational fail_r;                  // Pr_z[heuristic != K^t(z)]
  Rational inverter_fail;           // Pr_x[inverter does not invert f(x)]
  Rational required;                // fail_r / (n 2^{2c+1})
  std::optional<Rational> slack;    // inverter_fail / required, when required > 0
  bool bound_holds = false;
};

ReductionReport reduction_accounting(const Inverter& inverter, const OwfParams& params,
                                     const kolmogorov::KtTable& table);

/// Builds the K^t table itself.
ReductionReport reduction_accounting(const Inverter& inverter, const OwfParams& params);

}  // namespace ktbench::owf
