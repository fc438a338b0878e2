#include "ktbench/distinguisher.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "ktbench/errors.hpp"
#include "ktbench/rng.hpp"

namespace ktbench::distinguisher {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

DistinguisherParams make_params(std::size_t n, unsigned gamma, unsigned truncation_c, unsigned d) {
  if (n < 2) throw ConfigError("distinguisher: n must be at least 2");
  if (gamma < std::max(8U, 8 * d)) throw ConfigError("distinguisher: gamma must be >= max(8, 8d)");
  if (truncation_c > gamma + 1) throw ConfigError("distinguisher: c_trunc must be in [0, gamma + 1]");
  DistinguisherParams p;
  p.n = n;
  p.log_n = ceil_log2(n);
  p.gamma = gamma;
  p.truncation_c = truncation_c;
  p.d = d;
  const std::size_t expansion = std::size_t{gamma} * p.log_n;
  if (expansion <= truncation_c) throw ConfigError("distinguisher: truncation removes the whole expansion");
  p.m = n + expansion - truncation_c;
  p.beta = ceil_div(expansion, 8);
  p.threshold = p.m - ceil_div(3 * expansion, 8);
  p.eq1_threshold = p.m - ceil_div(expansion, 4);
  p.eq2_threshold = p.m - ceil_div(expansion, 2);
  return p;
}

Function truncate_prg(Function g, std::size_t c_trunc, std::size_t seed_bits, std::size_t out_bits) {
  if (c_trunc > out_bits) throw ConfigError("truncate_prg: c_trunc exceeds the output length");
  if (out_bits - c_trunc <= seed_bits) throw ConfigError("truncate_prg: truncated output does not expand");
  return [g = std::move(g), c_trunc](const BitString& s) {
    const BitString full = g(s);
    return full.prefix(full.size() - c_trunc);
  };
}

Predicate build_distinguisher(Heuristic heuristic, const DistinguisherParams& params) {
  return [h = std::move(heuristic), threshold = params.threshold](const BitString& x) { return h(x) >= threshold; };
}

Rational acceptance(const Predicate& dist, const stats::ExactDistribution& p) {
  std::uint64_t accepted = 0;
  for (const auto& [x, w] : p.weights()) {
    if (dist(x)) accepted += w;
  }
  return Rational(BigInt(accepted), BigInt(p.total_weight()));
}

Rational acceptance_uniform(const Predicate& dist, std::size_t bits) {
  if (bits > 26) throw BudgetExceeded("acceptance_uniform: more than 2^26 strings");
  std::uint64_t accepted = 0;
  BitString x;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) {
    x.assign_uint(v, bits);
    if (dist(x)) ++accepted;
  }
  return Rational(BigInt(accepted), BigInt(1) << bits);
}

Rational advantage(const Predicate& dist, const stats::ExactDistribution& p, const stats::ExactDistribution& q) {
  if (p.outcome_bits() != q.outcome_bits()) throw LengthMismatch("advantage: outcome lengths differ");
  return abs(acceptance(dist, p) - acceptance(dist, q));
}

ExactKtHeuristic::ExactKtHeuristic(std::size_t m, Steps t, const kolmogorov::EnumerationOptions& options)
    : m_(m), census_(std::make_shared<const kolmogorov::ProgramCensus>(m, t, m, options)) {}

std::size_t ExactKtHeuristic::operator()(const BitString& x) const {
  if (x.size() != m_) throw LengthMismatch("ExactKtHeuristic: |x| != m");
  const auto r = census_->lookup(x);
  return r ? r->length : m_ + 1;
}

Heuristic ExactKtHeuristic::as_heuristic() const {
  return [self = *this](const BitString& x) { return self(x); };
}

Heuristic approximate_heuristic(Heuristic exact, std::size_t beta, std::uint64_t seed) {
  return [exact = std::move(exact), beta, seed](const BitString& x) -> std::size_t {
    const std::uint64_t key = x.size() <= 58 ? x.to_uint() ^ (std::uint64_t{x.size()} << 58) : x.hash();
    const auto offset = static_cast<long long>(mix_seed(seed ^ mix_seed(key)) % (2 * beta + 1)) -
                        static_cast<long long>(beta);
    const auto value = static_cast<long long>(exact(x)) + offset;
    return static_cast<std::size_t>(std::max(0LL, value));
  };
}

bool at_least_one_minus(const Rational& p, unsigned coeff, std::size_t n, unsigned gamma) {
  const Rational gap = 1 - p;
  if (gap <= 0) return true;
  const Rational gap4 = gap * gap * gap * gap;
  return gap4 * Rational(boost::multiprecision::pow(BigInt(n), gamma)) <=
         Rational(boost::multiprecision::pow(BigInt(coeff), 4));
}

Eq1Verdict eq1_fraction(std::size_t m, Steps t, long long threshold, std::size_t n, unsigned gamma,
                        const kolmogorov::EnumerationOptions& options) {
  Eq1Verdict v;
  v.threshold = threshold;
  v.bound = 1 - std::pow(static_cast<long double>(n), -static_cast<long double>(gamma) / 4);
  const auto c = static_cast<long long>(options.machine_or_default().literal_overhead_c);
  if (threshold <= 0) {
    v.threshold_nonpositive = true;
    v.fraction = 1;
  } else if (threshold > static_cast<long long>(m) + c) {
    v.threshold_exceeds_m = true;
    v.fraction = 0;
  } else {
    v.threshold_exceeds_m = threshold > static_cast<long long>(m);
    const auto low = kolmogorov::count_low_complexity(m, t, static_cast<std::size_t>(threshold), options);
    v.fraction = 1 - Rational(BigInt(low), BigInt(1) << m);
  }
  v.holds = at_least_one_minus(v.fraction, 1, n, gamma);
  return v;
}

Eq1Verdict eq1_census(std::size_t m, std::size_t n, Steps t, unsigned gamma,
                      const kolmogorov::EnumerationOptions& options) {
  const auto drop = static_cast<long long>(ceil_div(std::size_t{gamma} * ceil_log2(n), 4));
  return eq1_fraction(m, t, static_cast<long long>(m) - drop, n, gamma, options);
}

Eq2Verdict eq2_census_fn(const Function& g, std::size_t seed_bits, std::size_t out_bits, Steps t,
                         long long threshold, const kolmogorov::EnumerationOptions& options) {
  if (seed_bits > 20) throw BudgetExceeded("eq2_census: more than 2^20 seeds");
  const auto c = static_cast<long long>(options.machine_or_default().literal_overhead_c);
  Eq2Verdict v;
  v.threshold = threshold;
  v.witness_limit = seed_bits + 9;
  v.seeds = std::size_t{1} << seed_bits;
  v.vacuous = threshold > static_cast<long long>(out_bits) + c;
  const long long limit = std::min<long long>(static_cast<long long>(v.witness_limit), threshold - 1);
  if (limit >= 1) {
    const kolmogorov::ProgramCensus census(static_cast<std::size_t>(limit), t, out_bits, options);
    for (std::uint64_t s = 0; s < v.seeds; ++s) {
      const BitString y = g(BitString::from_uint(s, seed_bits));
      if (y.size() != out_bits) throw LengthMismatch("eq2_census: output length differs from out_bits");
      if (const auto r = census.lookup(y)) {
        ++v.seeds_ok;
        v.max_kt = std::max(v.max_kt, r->length);
      }
    }
  }
  v.holds = v.seeds_ok == v.seeds;
  if (!v.holds) v.max_kt = 0;
  return v;
}

Eq2Verdict eq2_census(std::uint8_t builtin_id, std::size_t seed_bits, Steps t, const DistinguisherParams& params,
                      const kolmogorov::EnumerationOptions& options) {
  const auto* builtin = options.machine_or_default().find(builtin_id);
  if (builtin == nullptr) throw ConfigError("eq2_census: builtin not registered");
  const Function g = [builtin](const BitString& s) {
    auto y = builtin->apply(s);
    if (!y) throw ConfigError("eq2_census: builtin rejected a seed");
    return *std::move(y);
  };
  return eq2_census_fn(g, seed_bits, params.m, t, static_cast<long long>(params.eq2_threshold), options);
}

Function random_function(std::size_t seed_bits, std::size_t out_bits, std::uint64_t seed) {
  if (seed_bits > 20) throw BudgetExceeded("random_function: more than 2^20 inputs");
  SeededRng rng(seed);
  auto table = std::make_shared<std::vector<BitString>>();
  table->reserve(std::size_t{1} << seed_bits);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << seed_bits); ++s) table->push_back(rng.bits(out_bits));
  return [table, seed_bits](const BitString& s) {
    if (s.size() != seed_bits) throw LengthMismatch("random_function: wrong input length");
    return (*table)[s.to_uint()];
  };
}

TruncationRow evaluate_truncation(std::size_t n, unsigned gamma, unsigned c_trunc, Steps t, const Heuristic& heuristic,
                                  const kolmogorov::EnumerationOptions& options) {
  const auto params = make_params(n, gamma, c_trunc);
  const auto& machine = options.machine_or_default();
  if (gamma != static_cast<unsigned>(tinyvm::builtin_ids::kPrgGamma) || c_trunc > tinyvm::builtin_ids::kMaxTruncation) {
    throw ConfigError("truncation sweep: no registered builtin for this gamma / c_trunc");
  }
  const auto id = static_cast<std::uint8_t>(tinyvm::builtin_ids::kCondEpPrg + c_trunc);
  const auto* builtin = machine.find(id);
  if (builtin == nullptr) throw ConfigError("truncation sweep: builtin not registered");

  // The expander is injective, so its event is every seed.
  stats::ExactDistribution generated(params.m);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    generated.add(*builtin->apply(BitString::from_uint(s, n)));
  }
  const auto dist = build_distinguisher(heuristic, params);

  TruncationRow row;
  row.truncation_c = c_trunc;
  row.m = params.m;
  row.threshold = params.threshold;
  row.accept_uniform = acceptance_uniform(dist, params.m);
  row.accept_generator = acceptance(dist, generated);
  row.advantage = abs(row.accept_uniform - row.accept_generator);
  row.eq2 = eq2_census(id, n, t, params, options);
  row.claim_uniform = at_least_one_minus(row.accept_uniform, 2, n, gamma);
  row.claim_generator = row.accept_generator == 0;
  row.beats_target = row.advantage > Rational(1, n * n);
  return row;
}

std::vector<TruncationRow> truncation_sweep(std::size_t n, unsigned gamma, Steps t,
                                            const kolmogorov::EnumerationOptions& options) {
  std::vector<TruncationRow> rows;
  const unsigned last = std::min<unsigned>(gamma + 1, tinyvm::builtin_ids::kMaxTruncation);
  for (unsigned c = 0; c <= last; ++c) {
    const auto params = make_params(n, gamma, c);
    const ExactKtHeuristic exact(params.m, t, options);
    rows.push_back(evaluate_truncation(n, gamma, c, t, exact.as_heuristic(), options));
  }
  return rows;
}

}  // namespace ktbench::distinguisher
