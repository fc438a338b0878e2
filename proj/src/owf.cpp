#include "ktbench/owf.hpp"

#include <algorithm>
#include <charconv>

#include "ktbench/errors.hpp"
#include "ktbench/rng.hpp"

namespace ktbench::owf {

TSchedule parse_schedule(const std::string& name) {
  if (name == "4n") return {name, [](std::size_t n) -> Steps { return 4 * n; }};
  if (name == "n^2") return {name, [](std::size_t n) -> Steps { return n * n; }};
  Steps value = 0;
  const auto* end = name.data() + name.size();
  const auto [ptr, ec] = std::from_chars(name.data(), end, value);
  if (name.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError("unknown t schedule \"" + name + "\" (expected 4n, n^2 or a constant)");
  }
  return {name, [value](std::size_t) { return value; }};
}

OwfParams make_owf_params(std::size_t n, const TSchedule& schedule, const tinyvm::MachineConfig& machine) {
  if (n == 0) throw ConfigError("owf: n must be positive");
  OwfParams p;
  p.n = n;
  p.c = machine.literal_overhead_c;
  p.t = schedule(n);
  p.machine = &machine;
  return p;
}

std::size_t OwfInput::length(const OwfParams& params) const {
  return std::min<std::size_t>(ell.to_uint() + 1, params.pi_bits());
}

OwfInput OwfInput::from_bits(const OwfParams& params, const BitString& bits) {
  if (bits.size() != params.input_bits()) throw LengthMismatch("OwfInput: expected n + c + |ell| bits");
  return OwfInput{bits.prefix(params.ell_bits()), bits.suffix_from(params.ell_bits())};
}

BitString OwfOutput::to_bits(const OwfParams& params) const {
  if (ell == 0 || ell > params.pi_bits()) throw ConfigError("OwfOutput: ell outside 1..n+c");
  BitString out = BitString::from_uint(ell - 1, params.ell_bits());
  out.push_back(y.has_value());
  if (y) out.append(*y);
  return out;
}

OwfOutput eval_f(const OwfParams& params, const OwfInput& input) {
  if (input.ell.size() != params.ell_bits() || input.pi_prime.size() != params.pi_bits()) {
    throw LengthMismatch("eval_f: input field lengths do not match params");
  }
  const std::size_t ell = input.length(params);
  tinyvm::RunResult result;
  tinyvm::run_bits(input.pi_prime.prefix(ell), params.t, params.machine_or_default(), result);
  OwfOutput out{ell, std::nullopt};
  if (result.ok()) out.y = std::move(result.output);
  return out;
}

std::size_t structured_n(std::size_t input_bits, std::size_t c) {
  std::size_t best = 0;
  for (std::size_t n = 1; n + c + ceil_log2(n + c) <= input_bits; ++n) best = n;
  if (best == 0) throw ConfigError("eval_f_padded: input shorter than the minimum valid length");
  return best;
}

BitString eval_f_padded(const BitString& x_prime, const TSchedule& schedule, const tinyvm::MachineConfig& machine) {
  const std::size_t n = structured_n(x_prime.size(), machine.literal_overhead_c);
  const auto params = make_owf_params(n, schedule, machine);
  const auto input = OwfInput::from_bits(params, x_prime.prefix(params.input_bits()));
  return eval_f(params, input).to_bits(params);
}

BruteForceInverter::BruteForceInverter(const OwfParams& params) : params_(params) {
  const std::size_t m = params.input_bits();
  if (m > 24) throw BudgetExceeded("BruteForceInverter: input space exceeds 2^24");
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
    const auto input = OwfInput::from_bits(params, BitString::from_uint(v, m));
    auto key = eval_f(params, input).to_bits(params);
    ++image_[key];
    first_preimage_.try_emplace(std::move(key), v);
  }
}

std::optional<OwfInput> BruteForceInverter::operator()(const OwfOutput& y) const {
  if (y.ell == 0 || y.ell > params_.pi_bits()) return std::nullopt;
  auto it = first_preimage_.find(y.to_bits(params_));
  if (it == first_preimage_.end()) return std::nullopt;
  return OwfInput::from_bits(params_, BitString::from_uint(it->second, params_.input_bits()));
}

Inverter BruteForceInverter::as_inverter() const {
  return [this](const OwfOutput& y) { return (*this)(y); };
}

Inverter make_failing_inverter(Inverter base, std::set<BitString> deny_set, const OwfParams& params) {
  return [base = std::move(base), deny = std::move(deny_set), params](const OwfOutput& y) -> std::optional<OwfInput> {
    if (y.ell != 0 && y.ell <= params.pi_bits() && deny.contains(y.to_bits(params))) return std::nullopt;
    return base(y);
  };
}

std::set<BitString> random_deny_set(const BruteForceInverter& inverter, std::uint64_t seed) {
  SeededRng rng(mix_seed(seed));
  const unsigned j = 1 + static_cast<unsigned>(rng.below(6));
  std::set<BitString> deny;
  for (const auto& [y, count] : inverter.image()) {
    if (rng.below(std::uint64_t{1} << j) == 0) deny.insert(y);
  }
  return deny;
}

HeuristicAnswer heuristic_from_inverter(const Inverter& inverter, const BitString& z, const OwfParams& params) {
  if (z.size() != params.n) throw LengthMismatch("heuristic_from_inverter: |z| != n");
  const auto& machine = params.machine_or_default();
  tinyvm::RunResult result;
  for (std::size_t i = 1; i <= params.pi_bits(); ++i) {
    const auto answer = inverter(OwfOutput{i, z});
    if (!answer || answer->pi_prime.size() != params.pi_bits()) continue;
    const BitString prefix = answer->pi_prime.prefix(i);
    tinyvm::run_bits(prefix, params.t, machine, result);
    if (result.ok() && result.output == z) return {i, tinyvm::Program(prefix)};
  }
  return {z.size() + params.c, std::nullopt};
}

ReductionReport reduction_accounting(const Inverter& inverter, const OwfParams& params,
                                     const kolmogorov::KtTable& table) {
  if (table.n() != params.n || table.time_bound() != params.t) {
    throw ConfigError("reduction_accounting: K^t table does not match params");
  }
  const std::size_t m = params.input_bits();
  if (m > 24) throw BudgetExceeded("reduction_accounting: input space exceeds 2^24");

  std::uint64_t heuristic_errors = 0;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << params.n); ++z) {
    const auto answer = heuristic_from_inverter(inverter, BitString::from_uint(z, params.n), params);
    if (answer.k != table.at(z).length) ++heuristic_errors;
  }

  // Inverter success is a property of the output; cache it per output.
  std::unordered_map<BitString, bool, BitStringHash> inverts;
  std::uint64_t failures = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
    const auto input = OwfInput::from_bits(params, BitString::from_uint(v, m));
    const auto y = eval_f(params, input);
    auto key = y.to_bits(params);
    auto it = inverts.find(key);
    if (it == inverts.end()) {
      const auto pre = inverter(y);
      const bool ok = pre && pre->ell.size() == params.ell_bits() && pre->pi_prime.size() == params.pi_bits() &&
                      eval_f(params, *pre) == y;
      it = inverts.emplace(std::move(key), ok).first;
    }
    if (!it->second) ++failures;
  }

  ReductionReport report;
  report.n = params.n;
  report.c = params.c;
  report.t = params.t;
  report.q_target = std::to_string(std::uint64_t{1} << (2 * params.c + 3)) + " n p(n)^2";
  report.fail_r = Rational(BigInt(heuristic_errors), BigInt(1) << params.n);
  report.inverter_fail = Rational(BigInt(failures), BigInt(1) << m);
  report.required = report.fail_r / Rational(BigInt(params.n) << (2 * params.c + 1));
  if (report.required > 0) report.slack = report.inverter_fail / report.required;
  report.bound_holds = report.inverter_fail >= report.required;
  return report;
}

ReductionReport reduction_accounting(const Inverter& inverter, const OwfParams& params) {
  kolmogorov::EnumerationOptions options;
  options.machine = &params.machine_or_default();
  return reduction_accounting(inverter, params, kolmogorov::KtTable::build(params.n, params.t, options));
}

}  // namespace ktbench::owf
