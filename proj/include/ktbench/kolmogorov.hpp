#pragma once

// Exact time-bounded Kolmogorov complexity K^t on the tinyvm machine.
//
// Every search enumerates programs by length, then lexicographically, so the
// first hit is both the minimal length and the tie-broken witness. The
// production enumerators split each length into contiguous chunks run on
// worker threads and merge the chunk results in order; the reference
// enumerator is a plain sequential loop kept for cross-checking.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ktbench/bits.hpp"
#include "ktbench/tinyvm.hpp"

namespace ktbench::kolmogorov {

using tinyvm::Program;
using tinyvm::Steps;

struct KtResult {
  std::size_t length;
  Program witness;
  Steps time_bound;
};

struct EnumerationOptions {
  /// Largest |x| accepted by kt().
  std::size_t budget = 16;
  /// Largest program length any enumeration will visit.
  std::size_t max_program_bits = 26;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
  const tinyvm::MachineConfig* machine = nullptr;

  const tinyvm::MachineConfig& machine_or_default() const {
    return machine != nullptr ? *machine : tinyvm::default_machine();
  }
};

/// Exact K^t(x). Throws BudgetExceeded if |x| > budget and std::domain_error
/// when no program outputs x within t steps (t < |x|).
KtResult kt(const BitString& x, Steps t, const EnumerationOptions& options = {});

/// Searches programs of length <= max_length only. Returns the exact K^t(x)
/// when it is <= max_length, nullopt otherwise.
std::optional<KtResult> kt_bounded(const BitString& x, Steps t, std::size_t max_length,
                                   const EnumerationOptions& options = {});

/// Unoptimized single-threaded search over lengths 1..|x|+1.
std::optional<KtResult> reference_kt(const BitString& x, Steps t,
                                     const tinyvm::MachineConfig& machine = tinyvm::default_machine());

/// x in MINK^t[s]  <=>  K^t(x) <= s.
bool decide_mink(const BitString& x, Steps t, std::size_t s, const EnumerationOptions& options = {});

/// |{x in {0,1}^n : K^t(x) < threshold}|, counted as the distinct n-bit
/// outputs of programs shorter than threshold.
std::uint64_t count_low_complexity(std::size_t n, Steps t, std::size_t threshold,
                                   const EnumerationOptions& options = {});

/// |estimate - truth| <= beta.
bool approx_ok(std::int64_t estimate, std::int64_t truth, std::int64_t beta);

/// Shortest programs for every output, up to a program length.
///
/// Visits every program of length 1..max_length once and keeps, per output
/// (optionally restricted to one output length), the first program found.
class ProgramCensus {
 public:
  struct Entry {
    std::uint8_t length;
    std::uint64_t program;  // program bits as an integer of `length` bits
  };

  ProgramCensus(std::size_t max_length, Steps t, std::optional<std::size_t> output_bits = std::nullopt,
                const EnumerationOptions& options = {});

  std::size_t max_length() const { return max_length_; }
  Steps time_bound() const { return t_; }
  std::size_t size() const { return best_.size(); }

  /// Exact K^t(x) when it is <= max_length().
  std::optional<KtResult> lookup(const BitString& x) const;
  /// Distinct outputs whose shortest program is shorter than `threshold`.
  std::uint64_t count_below(std::size_t threshold) const;

  const std::unordered_map<BitString, Entry, BitStringHash>& entries() const { return best_; }

 private:
  std::size_t max_length_;
  Steps t_;
  std::unordered_map<BitString, Entry, BitStringHash> best_;
};

/// K^t for every string of one length, indexed by the string's integer value.
class KtTable {
 public:
  static KtTable build(std::size_t n, Steps t, const EnumerationOptions& options = {});

  std::size_t n() const { return n_; }
  Steps time_bound() const { return t_; }
  const KtResult& at(std::uint64_t x) const { return rows_.at(x); }
  const KtResult& at(const BitString& x) const { return rows_.at(x.to_uint()); }
  const std::vector<KtResult>& rows() const { return rows_; }

  /// CSV columns x_hex,n,t,kt,witness_hex,witness_bits.
  void write_csv(std::ostream& os) const;

 private:
  std::size_t n_ = 0;
  Steps t_ = 0;
  std::vector<KtResult> rows_;
};

}  // namespace ktbench::kolmogorov
