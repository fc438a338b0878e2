#include "ktbench/stats.hpp"

#include <algorithm>
#include <ostream>

namespace ktbench {

Rational pow2(int e) {
  BigInt one = 1;
  if (e >= 0) return Rational(one << e);
  return Rational(one, one << (-e));
}

}  // namespace ktbench

namespace ktbench::stats {

namespace {

using Wide = unsigned __int128;

BigInt to_big(Wide v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

}  // namespace

ExactDistribution ExactDistribution::point_mass(const BitString& x) {
  ExactDistribution d(x.size());
  d.add(x, 1);
  return d;
}

ExactDistribution ExactDistribution::uniform(std::size_t bits) {
  if (bits > 24) throw BudgetExceeded("ExactDistribution::uniform: refusing more than 2^24 outcomes");
  ExactDistribution d(bits);
  d.weights_.reserve(std::size_t{1} << bits);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) d.add(BitString::from_uint(v, bits), 1);
  return d;
}

ExactDistribution ExactDistribution::uniform_over(std::size_t bits, const std::vector<BitString>& support) {
  ExactDistribution d(bits);
  for (const auto& x : support) d.add(x, 1);
  return d;
}

void ExactDistribution::add(const BitString& x, std::uint64_t weight) {
  if (x.size() != outcome_bits_) throw LengthMismatch("ExactDistribution::add: outcome has wrong length");
  if (weight == 0) return;
  weights_[x] += weight;
  total_ += weight;
}

std::uint64_t ExactDistribution::weight(const BitString& x) const {
  auto it = weights_.find(x);
  return it == weights_.end() ? 0 : it->second;
}

Rational ExactDistribution::probability(const BitString& x) const {
  if (total_ == 0) throw std::logic_error("ExactDistribution: empty distribution");
  return Rational(BigInt(weight(x)), BigInt(total_));
}

std::uint64_t ExactDistribution::max_weight() const {
  std::uint64_t best = 0;
  for (const auto& [x, w] : weights_) best = std::max(best, w);
  return best;
}

std::vector<std::pair<BitString, std::uint64_t>> ExactDistribution::sorted() const {
  std::vector<std::pair<BitString, std::uint64_t>> out(weights_.begin(), weights_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void ExactDistribution::write_csv(std::ostream& os) const {
  os << "outcome_hex,numerator,denominator\n";
  for (const auto& [x, w] : sorted()) {
    const Rational p{BigInt(w), BigInt(total_)};
    os << x.to_hex() << ',' << numerator(p) << ',' << denominator(p) << '\n';
  }
}

Rational sd(const ExactDistribution& p, const ExactDistribution& q) {
  if (p.outcome_bits() != q.outcome_bits()) throw LengthMismatch("sd: outcome lengths differ");
  const Wide tp = p.total_weight();
  const Wide tq = q.total_weight();
  BigInt acc = 0;
  auto diff = [&](std::uint64_t wp, std::uint64_t wq) {
    const Wide a = Wide(wp) * tq;
    const Wide b = Wide(wq) * tp;
    acc += to_big(a > b ? a - b : b - a);
  };
  for (const auto& [x, wp] : p.weights()) diff(wp, q.weight(x));
  for (const auto& [x, wq] : q.weights()) {
    if (p.weight(x) == 0) diff(0, wq);
  }
  return Rational(acc, 2 * to_big(tp * tq));
}

Rational sd_to_uniform(const ExactDistribution& p) {
  const std::size_t n = p.outcome_bits();
  const BigInt space = BigInt(1) << n;
  const BigInt total = p.total_weight();
  // Pr[v] = w/T against 2^-n: |w 2^n - T| / (T 2^n); absent outcomes add T each.
  BigInt acc = 0;
  for (const auto& [x, w] : p.weights()) {
    BigInt a = BigInt(w) * space;
    acc += a > total ? BigInt(a - total) : BigInt(total - a);
  }
  acc += (space - p.support_size()) * total;
  return Rational(acc, 2 * total * space);
}

long double shannon_entropy(const ExactDistribution& p) {
  const long double total = static_cast<long double>(p.total_weight());
  long double acc = 0;
  for (const auto& [x, w] : p.weights()) {
    const long double wf = static_cast<long double>(w);
    acc += wf * std::log2(wf);
  }
  return std::log2(total) - acc / total;
}

long double min_entropy(const ExactDistribution& p) {
  return std::log2(static_cast<long double>(p.total_weight())) -
         std::log2(static_cast<long double>(p.max_weight()));
}

bool min_entropy_at_least(const ExactDistribution& p, unsigned k) {
  return (BigInt(p.max_weight()) << k) <= BigInt(p.total_weight());
}

SdEntropyVerdict sd_entropy_lemma_check(const ExactDistribution& p) {
  const std::size_t n = p.outcome_bits();
  if (n < 4) throw ConfigError("sd_entropy_lemma_check: needs n >= 4");
  SdEntropyVerdict v;
  v.distance = sd_to_uniform(p);
  v.premise_bound = Rational(1, static_cast<long long>(n * n));
  v.entropy = shannon_entropy(p);
  v.premise = v.distance <= v.premise_bound;
  v.conclusion = v.entropy + kEntropySlack >= static_cast<long double>(n) - 2;
  v.implication = !v.premise || v.conclusion;
  return v;
}

double hoeffding_epsilon(std::uint64_t count) {
  return std::sqrt(std::log(2.0 / 0.01) / (2.0 * static_cast<double>(count)));
}

std::vector<BitString> all_strings(std::size_t bits) {
  if (bits > 24) throw BudgetExceeded("all_strings: refusing more than 2^24 strings");
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << bits);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << bits); ++v) out.push_back(BitString::from_uint(v, bits));
  return out;
}

}  // namespace ktbench::stats
