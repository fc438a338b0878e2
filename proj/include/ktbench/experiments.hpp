#pragma once

// The experiment commands behind the CLI. Each returns a self-contained
// report; verdicts are copied from module-level checks, never computed here.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "ktbench/report.hpp"
#include "ktbench/tinyvm.hpp"

namespace ktbench::experiments {

using report::ExperimentReport;
using tinyvm::Steps;

/// Writes the K^t table CSV for all 2^n strings. Throws BudgetExceeded for n > 16.
void cmd_kt_table(std::size_t n, Steps t, std::ostream& out);
void cmd_kt_table(std::size_t n, Steps t, const std::string& out_path);

struct OwfConfig {
  std::size_t n = 8;
  /// perfect | deny-all | deny-one | deny-random
  std::string inverter = "perfect";
  std::string t_schedule = "64";
  std::uint64_t seed = 1;
  /// Number of seeded inverters for deny-random.
  std::size_t trials = 100;
};

ExperimentReport cmd_owf_experiment(const OwfConfig& config);

struct PrgConfig {
  std::string owf = "identity";
  std::size_t n = 4;
  unsigned alpha_prime = 0;
  unsigned gamma = 2;
  unsigned delta = 1;
  /// exact | sampled
  std::string mode = "exact";
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
};

ExperimentReport cmd_prg_experiment(const PrgConfig& config);

struct DistinguishConfig {
  std::size_t n = 4;
  unsigned gamma = 8;
  /// exact-kt | constant-0 | constant-m | approx
  std::string heuristic = "exact-kt";
  Steps t = 64;
  std::uint64_t seed = 1;
  /// Optional CSV (x = c_trunc, y, series) of the sweep.
  std::optional<std::string> plot_out;
};

ExperimentReport cmd_distinguish(const DistinguishConfig& config);

}  // namespace ktbench::experiments
