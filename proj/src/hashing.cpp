#include "ktbench/hashing.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "ktbench/errors.hpp"
#include "ktbench_generated/gf2_moduli_data.hpp"

namespace ktbench::hashing {

std::map<unsigned, std::uint32_t> parse_modulus_table(const std::string& text) {
  std::map<unsigned, std::uint32_t> table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ConfigError("modulus table: missing ':' in \"" + line + "\"");
    const auto n = static_cast<unsigned>(std::stoul(line.substr(0, colon)));
    const auto poly = static_cast<std::uint32_t>(std::stoul(line.substr(colon + 1), nullptr, 16));
    if ((poly >> n) != 1U) throw ConfigError("modulus table: degree mismatch for n = " + std::to_string(n));
    table[n] = poly;
  }
  return table;
}

const std::map<unsigned, std::uint32_t>& modulus_table() {
  static const auto table = parse_modulus_table(generated::kGf2ModuliText);
  return table;
}

const std::string& modulus_table_version() {
  static const std::string version = "gf2-moduli-1";
  return version;
}

Gf2Field::Gf2Field(unsigned n) : n_(n) {
  const auto& table = modulus_table();
  auto it = table.find(n);
  if (it == table.end()) throw ConfigError("Gf2Field: no modulus for n = " + std::to_string(n));
  modulus_ = it->second;
}

BitString HashSeed::to_bits() const {
  BitString out;
  out.append_uint(a, n);
  out.append_uint(b, n);
  return out;
}

HashSeed HashSeed::from_bits(const BitString& bits) {
  if (bits.size() % 2 != 0 || bits.size() / 2 > kMaxFieldBits || bits.empty()) {
    throw LengthMismatch("HashSeed::from_bits: expected 2n bits with 1 <= n <= 16");
  }
  const auto n = static_cast<unsigned>(bits.size() / 2);
  return HashSeed{static_cast<std::uint32_t>(bits.read_uint(0, n)),
                  static_cast<std::uint32_t>(bits.read_uint(n, n)), n};
}

BitString hash(const HashSeed& seed, const BitString& x) {
  if (x.size() != seed.n) throw LengthMismatch("hash: |x| differs from seed.n");
  const Gf2Field field(seed.n);
  const auto value = hash_value(field, seed.a, seed.b, static_cast<std::uint32_t>(x.to_uint()));
  return BitString::from_uint(value, seed.n);
}

BitString truncate(const BitString& y, std::size_t j) {
  if (j > y.size()) throw std::out_of_range("truncate: j exceeds |y|");
  return y.prefix(j);
}

bool within_half_power_bound(const Rational& sd, unsigned d) {
  return sd * sd <= pow2(-static_cast<int>(d));
}

LhlResult lhl_check(const stats::ExactDistribution& x, unsigned k, unsigned d) {
  const auto n = static_cast<unsigned>(x.outcome_bits());
  if (d > k || k > n) throw ConfigError("lhl_check: need d <= k <= n");
  if (n == 0 || n > 10) throw BudgetExceeded("lhl_check: exhaustive seed enumeration needs 1 <= n <= 10");
  if (!stats::min_entropy_at_least(x, k)) throw ConfigError("lhl_check: H_inf(X) < k");

  const Gf2Field field(n);
  const unsigned out_bits = k - d;
  const std::uint32_t buckets = std::uint32_t{1} << out_bits;
  const std::uint64_t total = x.total_weight();

  std::vector<std::pair<std::uint32_t, std::uint64_t>> support;
  for (const auto& [v, w] : x.weights()) support.emplace_back(static_cast<std::uint32_t>(v.to_uint()), w);

  // Seeds are uniform in both distributions, so the joint SD is the seed
  // average of SD([h(X)]_j, U_j). Per seed, with counts c_y over T:
  // 2*SD = sum_y |c_y * 2^j - T| / (T * 2^j).
  BigInt acc = 0;
  std::vector<std::uint64_t> counts(buckets);
  for (std::uint32_t a = 0; a < field.order(); ++a) {
    for (std::uint32_t b = 0; b < field.order(); ++b) {
      std::fill(counts.begin(), counts.end(), 0);
      for (const auto& [v, w] : support) counts[hash_value(field, a, b, v) >> (n - out_bits)] += w;
      for (auto c : counts) {
        const unsigned __int128 scaled = static_cast<unsigned __int128>(c) << out_bits;
        acc += static_cast<std::uint64_t>(scaled > total ? scaled - total : total - scaled);
      }
    }
  }
  const BigInt seeds = BigInt(1) << (2 * n);
  LhlResult result;
  result.out_bits = out_bits;
  result.measured_sd = Rational(acc, 2 * seeds * BigInt(total) * (BigInt(1) << out_bits));
  result.bound = std::pow(2.0L, -static_cast<long double>(d) / 2);
  result.holds = within_half_power_bound(result.measured_sd, d);
  return result;
}

}  // namespace ktbench::hashing
