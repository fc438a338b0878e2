#include "ktbench/kolmogorov.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ktbench/errors.hpp"

namespace ktbench::kolmogorov {

namespace {

unsigned worker_count(const EnumerationOptions& options) {
  unsigned n = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Splits [0, count) into `parts` contiguous chunks and runs body(chunk, lo, hi)
// for each, on separate threads when parts > 1.
template <class Body>
void for_each_chunk(std::uint64_t count, unsigned parts, Body&& body) {
  if (parts <= 1 || count < 4096) {
    body(0U, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(parts);
  const std::uint64_t step = (count + parts - 1) / parts;
  for (unsigned c = 0; c < parts; ++c) {
    const std::uint64_t lo = std::min<std::uint64_t>(count, c * step);
    const std::uint64_t hi = std::min<std::uint64_t>(count, lo + step);
    workers.emplace_back([&body, c, lo, hi] { body(c, lo, hi); });
  }
}

void check_program_length(std::size_t length, const EnumerationOptions& options) {
  if (length > options.max_program_bits || length > 63) {
    throw BudgetExceeded("enumeration would visit programs of " + std::to_string(length) +
                         " bits (limit " + std::to_string(options.max_program_bits) + ")");
  }
}

// First program of exactly `length` bits whose output is x, if any.
std::optional<std::uint64_t> search_length(const BitString& x, Steps t, std::size_t length,
                                           const EnumerationOptions& options) {
  const auto& machine = options.machine_or_default();
  const std::uint64_t count = std::uint64_t{1} << length;
  const unsigned parts = worker_count(options);
  std::vector<std::optional<std::uint64_t>> found(std::max(parts, 1U));
  for_each_chunk(count, parts, [&](unsigned chunk, std::uint64_t lo, std::uint64_t hi) {
    BitString bits;
    tinyvm::RunResult result;
    for (std::uint64_t v = lo; v < hi; ++v) {
      bits.assign_uint(v, length);
      tinyvm::run_bits(bits, t, machine, result);
      if (result.ok() && result.output == x) {
        found[chunk] = v;
        return;
      }
    }
  });
  for (const auto& f : found) {
    if (f) return f;
  }
  return std::nullopt;
}

KtResult make_result(std::size_t length, std::uint64_t program, Steps t) {
  return KtResult{length, Program(BitString::from_uint(program, length)), t};
}

}  // namespace

std::optional<KtResult> kt_bounded(const BitString& x, Steps t, std::size_t max_length,
                                   const EnumerationOptions& options) {
  check_program_length(max_length, options);
  for (std::size_t length = 1; length <= max_length; ++length) {
    if (auto v = search_length(x, t, length, options)) return make_result(length, *v, t);
  }
  return std::nullopt;
}

KtResult kt(const BitString& x, Steps t, const EnumerationOptions& options) {
  if (x.size() > options.budget) {
    throw BudgetExceeded("kt: |x| = " + std::to_string(x.size()) + " exceeds budget " +
                         std::to_string(options.budget));
  }
  auto result = kt_bounded(x, t, x.size() + options.machine_or_default().literal_overhead_c, options);
  if (!result) throw std::domain_error("kt: no program outputs x within t steps");
  return *std::move(result);
}

std::optional<KtResult> reference_kt(const BitString& x, Steps t, const tinyvm::MachineConfig& machine) {
  for (std::size_t length = 1; length <= x.size() + 1; ++length) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << length); ++v) {
      const Program p(BitString::from_uint(v, length));
      const auto r = tinyvm::run(p, t, machine);
      if (r.ok() && r.output == x) return KtResult{length, p, t};
    }
  }
  return std::nullopt;
}

bool decide_mink(const BitString& x, Steps t, std::size_t s, const EnumerationOptions& options) {
  if (x.size() > options.budget) throw BudgetExceeded("decide_mink: |x| exceeds budget");
  if (s == 0) return false;
  return kt_bounded(x, t, std::min(s, x.size() + options.machine_or_default().literal_overhead_c), options)
      .has_value();
}

std::uint64_t count_low_complexity(std::size_t n, Steps t, std::size_t threshold,
                                   const EnumerationOptions& options) {
  if (threshold > n + options.machine_or_default().literal_overhead_c) {
    throw ConfigError("count_low_complexity: threshold exceeds n + c");
  }
  if (threshold <= 1) return 0;
  const ProgramCensus census(threshold - 1, t, n, options);
  return census.size();
}

bool approx_ok(std::int64_t estimate, std::int64_t truth, std::int64_t beta) {
  const std::int64_t diff = estimate > truth ? estimate - truth : truth - estimate;
  return diff <= beta;
}

ProgramCensus::ProgramCensus(std::size_t max_length, Steps t, std::optional<std::size_t> output_bits,
                             const EnumerationOptions& options)
    : max_length_(max_length), t_(t) {
  check_program_length(max_length, options);
  const auto& machine = options.machine_or_default();
  const unsigned parts = worker_count(options);
  using Local = std::vector<std::pair<BitString, std::uint64_t>>;
  for (std::size_t length = 1; length <= max_length; ++length) {
    const std::uint64_t count = std::uint64_t{1} << length;
    // Literal programs of this length emit length-1 bits; skip them when the
    // filter excludes that length.
    const std::uint64_t start = (output_bits && *output_bits != length - 1) ? count / 2 : 0;
    std::vector<Local> local(std::max(parts, 1U));
    for_each_chunk(count - start, parts, [&](unsigned chunk, std::uint64_t lo, std::uint64_t hi) {
      BitString bits;
      tinyvm::RunResult result;
      std::unordered_map<BitString, bool, BitStringHash> seen;
      for (std::uint64_t v = start + lo; v < start + hi; ++v) {
        bits.assign_uint(v, length);
        tinyvm::run_bits(bits, t, machine, result);
        if (!result.ok()) continue;
        if (output_bits && result.output.size() != *output_bits) continue;
        if (best_.contains(result.output)) continue;
        if (seen.emplace(result.output, true).second) local[chunk].emplace_back(result.output, v);
      }
    });
    for (auto& chunk : local) {
      for (auto& [out, v] : chunk) {
        best_.try_emplace(std::move(out), Entry{static_cast<std::uint8_t>(length), v});
      }
    }
  }
}

std::optional<KtResult> ProgramCensus::lookup(const BitString& x) const {
  auto it = best_.find(x);
  if (it == best_.end()) return std::nullopt;
  return make_result(it->second.length, it->second.program, t_);
}

std::uint64_t ProgramCensus::count_below(std::size_t threshold) const {
  std::uint64_t count = 0;
  for (const auto& [out, e] : best_) {
    if (e.length < threshold) ++count;
  }
  return count;
}

KtTable KtTable::build(std::size_t n, Steps t, const EnumerationOptions& options) {
  if (n > options.budget) throw BudgetExceeded("KtTable: n exceeds budget");
  const std::size_t c = options.machine_or_default().literal_overhead_c;
  const ProgramCensus census(n + c, t, n, options);
  KtTable table;
  table.n_ = n;
  table.t_ = t;
  table.rows_.reserve(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    auto r = census.lookup(BitString::from_uint(x, n));
    if (!r) throw std::domain_error("KtTable: some string has no program within t steps");
    table.rows_.push_back(*std::move(r));
  }
  return table;
}

void KtTable::write_csv(std::ostream& os) const {
  os << "x_hex,n,t,kt,witness_hex,witness_bits\n";
  for (std::uint64_t x = 0; x < rows_.size(); ++x) {
    const auto& r = rows_[x];
    os << BitString::from_uint(x, n_).to_hex() << ',' << n_ << ',' << t_ << ',' << r.length << ','
       << r.witness.bits().to_hex() << ',' << r.witness.size() << '\n';
  }
}

}  // namespace ktbench::kolmogorov
